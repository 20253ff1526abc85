#include "qons/onsager.hpp"

namespace qons {

namespace {

SpMat<Rat> triple_qcomm(const Rat& q, const SpMat<Rat>& a, const SpMat<Rat>& b) {
    // [a, [a, [a, b]_q]_{q^{-1}}]
    Rat qi = Rat(1) / q;
    auto inner = qcomm(q, a, b);
    auto mid = qcomm(qi, a, inner);
    return comm(a, mid);
}

void need_depth(const GeneratorFamily& f, int depth, const char* what) {
    if (f.depth < depth)
        throw depth_error(std::string(what) + ": family depth " + std::to_string(f.depth) +
                          " < required " + std::to_string(depth));
}

}  // namespace

RelationReport check_relations(const GeneratorFamily& f, RelationSet set, int kmax) {
    RelationReport rep;
    const Rat& q = f.params.q;
    Rat qi = f.params.qinv();
    auto add = [&rep](std::string id, int k, int l, bool pass) {
        rep.instances.push_back({std::move(id), k, l, pass});
    };
    bool bar = (f.kind == FamilyKind::aq_bar || f.kind == FamilyKind::aq_diag_bar);

    if (set == RelationSet::q_dolan_grady) {
        Rat rho = bar ? f.params.rho_bar() : f.params.rho();
        const auto &W0 = f.w0(), &W1 = f.w1();
        add("Talg.0", 0, 0, (triple_qcomm(q, W0, W1) - comm(W0, W1) * rho).is_zero());
        add("Talg.1", 0, 0, (triple_qcomm(q, W1, W0) - comm(W1, W0) * rho).is_zero());
        return rep;
    }
    if (set == RelationSet::augmented) {
        if (!f.diag_kind()) throw domain_error("augmented relations need a diagonal-kind family");
        Rat rd = f.params.rho_diag();
        const auto &K0 = f.w0(), &K1 = f.w1(), &Z1 = f.g[0], &Zt1 = f.gt[0];
        Rat q2 = q * q, q2i = qi * qi;
        add("Taug.comm", 0, 0, comm(K0, K1).is_zero());
        add("Taug.K0Z", 0, 0, (K0 * Z1 - Z1 * K0 * q2i).is_zero());
        add("Taug.K0Zt", 0, 0, (K0 * Zt1 - Zt1 * K0 * q2).is_zero());
        add("Taug.K1Z", 0, 0, (K1 * Z1 - Z1 * K1 * q2).is_zero());
        add("Taug.K1Zt", 0, 0, (K1 * Zt1 - Zt1 * K1 * q2i).is_zero());
        add("Taug.ZZZZt", 0, 0,
            (triple_qcomm(q, Z1, Zt1) - Z1 * (K1 * K1 - K0 * K0) * Z1 * rd).is_zero());
        add("Taug.ZtZtZtZ", 0, 0,
            (triple_qcomm(q, Zt1, Z1) - Zt1 * (K0 * K0 - K1 * K1) * Zt1 * rd).is_zero());
        return rep;
    }
    // aq_full: the mode-level defining relations
    if (!f.diag_kind()) {
        Rat rho = bar ? f.params.rho_bar() : f.params.rho();
        need_depth(f, kmax + 2, "check_relations(aq_full)");
        const auto &W0 = f.w0(), &W1 = f.w1();
        Rat c1 = Rat(1) / (q + qi);
        for (int k = 0; k <= kmax; ++k) {
            auto rhs1 = (f.gt[k] - f.g[k]) * c1;
            add("qOns.1a", k, 0, (comm(W0, f.wp[k]) - rhs1).is_zero());
            add("qOns.1b", k, 0, (comm(f.wm[k], W1) - rhs1).is_zero());
            auto rhs2 = (f.wm[k + 1] - f.wp[k]) * rho;
            add("qOns.2a", k, 0, (qcomm(q, W0, f.g[k]) - rhs2).is_zero());
            add("qOns.2b", k, 0, (qcomm(q, f.gt[k], W0) - rhs2).is_zero());
            auto rhs3 = (f.wp[k + 1] - f.wm[k]) * rho;
            add("qOns.3a", k, 0, (qcomm(q, f.g[k], W1) - rhs3).is_zero());
            add("qOns.3b", k, 0, (qcomm(q, W1, f.gt[k]) - rhs3).is_zero());
            add("qOns.4a", k, 0, comm(W0, f.wm[k]).is_zero());
            add("qOns.4b", k, 0, comm(W1, f.wp[k]).is_zero());
        }
        for (int k = 0; k <= kmax; ++k) {
            for (int l = 0; l <= kmax; ++l) {
                add("qOns.GG", k, l, comm(f.g[k], f.g[l]).is_zero());
                add("qOns.GtGt", k, l, comm(f.gt[k], f.gt[l]).is_zero());
                add("qOns.GtG", k, l,
                    (comm(f.gt[k], f.g[l]) + comm(f.g[k], f.gt[l])).is_zero());
            }
        }
    } else {
        need_depth(f, kmax + 1, "check_relations(aq_full, diag)");
        const auto &K0 = f.w0(), &K1 = f.w1();
        Rat q2 = q * q, q2i = qi * qi;
        for (int k = 0; k <= kmax; ++k) {
            add("qOnsDiag.K0K", k, 0, comm(K0, f.wp[k]).is_zero());
            add("qOnsDiag.KK1", k, 0, comm(f.wm[k], K1).is_zero());
            add("qOnsDiag.K0Z", k, 0, (K0 * f.g[k] - f.g[k] * K0 * q2i).is_zero());
            add("qOnsDiag.K0Zt", k, 0, (K0 * f.gt[k] - f.gt[k] * K0 * q2).is_zero());
            add("qOnsDiag.K1Z", k, 0, (K1 * f.g[k] - f.g[k] * K1 * q2).is_zero());
            add("qOnsDiag.K1Zt", k, 0, (K1 * f.gt[k] - f.gt[k] * K1 * q2i).is_zero());
        }
        for (int k = 0; k <= kmax; ++k)
            for (int l = 0; l <= kmax; ++l) {
                add("qOnsDiag.ZZ", k, l, comm(f.g[k], f.g[l]).is_zero());
                add("qOnsDiag.ZtZt", k, l, comm(f.gt[k], f.gt[l]).is_zero());
                add("qOnsDiag.ZtZ", k, l,
                    (comm(f.gt[k], f.g[l]) + comm(f.g[k], f.gt[l])).is_zero());
            }
    }
    return rep;
}

DaviesReport find_linear_relations(const GeneratorFamily& f) {
    const int N = f.sites;
    need_depth(f, N + 1, "find_linear_relations");
    DaviesReport rep;
    int dim = f.dim();
    auto Id = SpMat<Rat>::identity(dim);
    bool allzero = true;
    for (int j = 0; j <= N; ++j)
        if (!f.wm[j].is_zero() || !f.wp[j].is_zero() || !f.g[j].is_zero() || !f.gt[j].is_zero())
            allzero = false;
    if (allzero) {
        rep.degenerate = true;
        return rep;
    }
    Rat zshift = f.z_shift();
    struct StrandSpec {
        const char* name;
        bool with_id;
        int which;  // 0 wm, 1 wp, 2 g, 3 gt
    };
    const StrandSpec specs[4] = {{"W-", true, 0}, {"W+", true, 1}, {"G", false, 2}, {"Gt", false, 3}};
    std::vector<std::vector<Rat>> profiles;
    for (const auto& sp : specs) {
        std::vector<SpMat<Rat>> colsm;
        for (int j = 0; j <= N; ++j) {
            switch (sp.which) {
                case 0: colsm.push_back(f.wm[j]); break;
                case 1: colsm.push_back(f.wp[j]); break;
                case 2: colsm.push_back(f.g[j] + Id * zshift); break;
                default: colsm.push_back(f.gt[j] + Id * zshift); break;
            }
        }
        int nm = static_cast<int>(colsm.size());
        if (sp.with_id) colsm.push_back(Id);
        auto null = nullspace_of_columns(colsm);
        for (auto& v : null) {
            DaviesRelation r;
            r.strand = sp.name;
            r.coeffs.assign(v.begin(), v.begin() + nm);
            r.inhom = sp.with_id ? v[nm] : Rat(0);
            // verify annihilation
            SpMat<Rat> acc(dim, dim);
            for (int j = 0; j <= N; ++j) acc = acc + colsm[j] * r.coeffs[j];
            if (sp.with_id) acc = acc + Id * r.inhom;
            r.annihilates = acc.is_zero();
            bool nontrivial = false;
            for (auto& c : r.coeffs)
                if (sgn(c) != 0) nontrivial = true;
            if (nontrivial) {
                profiles.push_back(r.coeffs);
                rep.relations.push_back(std::move(r));
            }
        }
    }
    // shared profile: normalize each coefficient vector at its first nonzero slot
    if (!profiles.empty()) {
        auto normalize = [](std::vector<Rat> v) {
            for (auto& x : v)
                if (sgn(x) != 0) {
                    Rat n = x;
                    for (auto& y : v) y /= n;
                    break;
                }
            return v;
        };
        auto ref = normalize(profiles[0]);
        rep.shared_profile = true;
        for (auto& pr : profiles)
            if (normalize(pr) != ref) rep.shared_profile = false;
    }
    return rep;
}

std::vector<SpMat<Rat>> build_hierarchy(const GeneratorFamily& f, const ModelParams& p, int count) {
    need_depth(f, count, "build_hierarchy");
    const Rat& q = p.q;
    Rat qi = Rat(1) / q;
    Rat d = q * q - qi * qi;
    std::vector<SpMat<Rat>> out;
    for (int k = 0; k < count; ++k) {
        SpMat<Rat> el(f.dim(), f.dim());
        switch (f.kind) {
            case FamilyKind::aq: {
                if (sgn(p.k_p) == 0 || sgn(p.k_m) == 0)
                    throw domain_error("hierarchy: k_+/k_- vanish; use the diagonal hierarchy");
                el = f.wm[k] * p.beps_p + f.wp[k] * p.beps_m +
                     (f.g[k] * (p.bk_m / p.k_m) + f.gt[k] * (p.bk_p / p.k_p)) * (Rat(1) / d);
                break;
            }
            case FamilyKind::aq_bar: {
                if (sgn(p.bk_p) == 0 || sgn(p.bk_m) == 0)
                    throw domain_error("hierarchy: bk_+/bk_- vanish; use the diagonal hierarchy");
                el = f.wp[k] * p.eps_p + f.wm[k] * p.eps_m +
                     (f.gt[k] * (p.k_m / p.bk_m) + f.g[k] * (p.k_p / p.bk_p)) * (Rat(1) / d);
                break;
            }
            case FamilyKind::aq_diag: {
                el = f.wm[k] * p.beps_p + f.wp[k] * p.beps_m +
                     (f.g[k] * p.bk_m + f.gt[k] * p.bk_p) * (Rat(1) / d);
                break;
            }
            case FamilyKind::aq_diag_bar: {
                el = f.wp[k] * p.eps_p + f.wm[k] * p.eps_m +
                     (f.gt[k] * p.k_m + f.g[k] * p.k_p) * (Rat(1) / d);
                break;
            }
        }
        out.push_back(std::move(el));
    }
    return out;
}

}  // namespace qons
