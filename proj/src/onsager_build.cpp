#include <algorithm>

#include "ec_relations.hpp"
#include "onsager_internal.hpp"

namespace qons {

namespace {

struct Seed {
    Rat w0, w1, g1;
};

Seed seed_for(const ModelParams& p, FamilyKind kind) {
    Rat qm = p.q - p.qinv();
    if (kind == FamilyKind::aq) return {p.eps_p, p.eps_m, p.eps_p * p.eps_m * qm};
    if (kind == FamilyKind::aq_diag) return {p.eps_p, p.eps_m, Rat(0)};
    throw error("seed_for: barred kinds are built by site reversal");
}

}  // namespace

GeneratorFamily build_fundamentals(const ModelParams& p, int sites, FamilyKind kind) {
    p.validate();
    if (kind == FamilyKind::aq_bar || kind == FamilyKind::aq_diag_bar) {
        // (elB1)/(elB2): barred generators are the site-reversed plain ones at
        // swapped boundary parameters.
        FamilyKind plain = kind == FamilyKind::aq_bar ? FamilyKind::aq : FamilyKind::aq_diag;
        GeneratorFamily base = build_fundamentals(p.swapped_for_bar(), sites, plain);
        GeneratorFamily f;
        f.kind = kind;
        f.sites = sites;
        f.depth = 1;
        f.params = p;
        f.wm = {reverse_sites(base.wp[0], sites)};
        f.wp = {reverse_sites(base.wm[0], sites)};
        f.g = {reverse_sites(base.gt[0], sites)};
        f.gt = {reverse_sites(base.g[0], sites)};
        return f;
    }
    bool diag = kind == FamilyKind::aq_diag;
    if (!diag && sgn(p.k_p * p.k_m) == 0)
        throw domain_error("A_q family needs k_+ k_- != 0; use the diagonal kind");
    GeneratorFamily f;
    f.kind = kind;
    f.sites = sites;
    f.depth = 1;
    f.params = p;
    const Rat& q = p.q;
    Rat qi = p.qinv();
    Rat q2m = q * q - qi * qi;
    Seed s = seed_for(p, kind);
    auto W0 = SpMat<Rat>::identity(1) * s.w0;
    auto W1 = SpMat<Rat>::identity(1) * s.w1;
    auto G1 = SpMat<Rat>::identity(1) * s.g1;
    auto Gt1 = G1;
    auto sp = sigma_p<Rat>();
    auto sm = sigma_m<Rat>();
    auto qs3 = q_sigma3<Rat>(q);
    auto qs3i = q_sigma3<Rat>(qi);
    SpMat<Rat> site = diag ? SpMat<Rat>(2, 2) : sp * p.k_p + sm * p.k_m;
    for (int n = 1; n <= sites; ++n) {
        int dim = 1 << (n - 1);
        auto id_prev = SpMat<Rat>::identity(dim);
        auto id2 = SpMat<Rat>::identity(2);
        auto W0n = kron(site, id_prev) + kron(qs3, W0);
        auto W1n = kron(site, id_prev) + kron(qs3i, W1);
        auto G1n = kron(id2, G1) + kron(sm, W0 + W1) * (q2m * (diag ? Rat(1) : p.k_m));
        auto Gt1n = kron(id2, Gt1) + kron(sp, W0 + W1) * (q2m * (diag ? Rat(1) : p.k_p));
        if (!diag) {
            Rat c = p.k_p * p.k_m * (q - qi);
            G1n = G1n + SpMat<Rat>::identity(2 * dim) * c;
            Gt1n = Gt1n + SpMat<Rat>::identity(2 * dim) * c;
        }
        W0 = W0n;
        W1 = W1n;
        G1 = G1n;
        Gt1 = Gt1n;
    }
    f.wm = {W0};
    f.wp = {W1};
    f.g = {G1};
    f.gt = {Gt1};
    return f;
}

GeneratorFamily build_fundamentals_bar_direct(const ModelParams& p, int sites, FamilyKind kind) {
    bool diag = kind == FamilyKind::aq_diag_bar;
    if (!diag && kind != FamilyKind::aq_bar) throw error("bar_direct: barred kinds only");
    GeneratorFamily f;
    f.kind = kind;
    f.sites = sites;
    f.depth = 1;
    f.params = p;
    const Rat& q = p.q;
    Rat qi = p.qinv();
    Rat q2m = q * q - qi * qi;
    auto W0 = SpMat<Rat>::identity(1) * p.beps_m;
    auto W1 = SpMat<Rat>::identity(1) * p.beps_p;
    auto G1 = SpMat<Rat>::identity(1) * (diag ? Rat(0) : p.beps_p * p.beps_m * (q - qi));
    auto Gt1 = G1;
    auto sp = sigma_p<Rat>();
    auto sm = sigma_m<Rat>();
    auto qs3 = q_sigma3<Rat>(q);
    auto qs3i = q_sigma3<Rat>(qi);
    SpMat<Rat> site = sp * p.bk_p + sm * p.bk_m;
    for (int n = 1; n <= sites; ++n) {
        int dim = 1 << (n - 1);
        auto id_prev = SpMat<Rat>::identity(dim);
        auto id2 = SpMat<Rat>::identity(2);
        auto W0n = kron(id_prev, site) + kron(W0, qs3i);
        auto W1n = kron(id_prev, site) + kron(W1, qs3);
        auto G1n = kron(G1, id2) + kron(W0 + W1, sp) * (q2m * (diag ? Rat(1) : p.bk_p));
        auto Gt1n = kron(Gt1, id2) + kron(W0 + W1, sm) * (q2m * (diag ? Rat(1) : p.bk_m));
        if (!diag) {
            Rat c = p.bk_p * p.bk_m * (q - qi);
            G1n = G1n + SpMat<Rat>::identity(2 * dim) * c;
            Gt1n = Gt1n + SpMat<Rat>::identity(2 * dim) * c;
        }
        W0 = W0n;
        W1 = W1n;
        G1 = G1n;
        Gt1 = Gt1n;
    }
    f.wm = {W0};
    f.wp = {W1};
    f.g = {G1};
    f.gt = {Gt1};
    return f;
}

namespace {

// Solve the depth-d modes from all current-algebra relation instances with
// coefficient orders within [0, d+1]^2 that are affine in the new modes.
struct LevelSolution {
    std::vector<SpMat<Rat>> modes;               // particular (wm, wp, g, gt)
    std::vector<std::vector<SpMat<Rat>>> slack;  // nullspace directions
};

LevelSolution solve_level(const GeneratorFamily& f, int d) {
    const Rat& q = f.params.q;
    int dim = f.dim();
    auto col_of = [dim](int block, int i, int j) { return (block * dim + i) * dim + j; };
    ec::Series ser = ec::family_series(f);
    Rat zfac[4] = {Rat(1), Rat(1), Rat(1), Rat(1)};
    if (!f.diag_kind()) {
        bool bar = f.kind == FamilyKind::aq_bar;
        zfac[2] = Rat(1) / (bar ? f.params.bk_p : f.params.k_m);
        zfac[3] = Rat(1) / (bar ? f.params.bk_m : f.params.k_p);
    }
    int top = d + 1;
    // phase 1: the W modes from instances not touching the new Z modes;
    // phase 2: the Z modes with the W modes substituted.
    std::vector<SpMat<Rat>> solved(4, SpMat<Rat>(dim, dim));
    std::vector<std::vector<SpMat<Rat>>> slack_all;
    for (int phase = 0; phase < 2; ++phase) {
        std::vector<int> blocks = phase == 0 ? std::vector<int>{0, 1} : std::vector<int>{2, 3};
        auto in_phase = [&](int sid) {
            return phase == 0 ? (sid == 0 || sid == 1) : (sid == 2 || sid == 3);
        };
        int ncols = 2 * dim * dim;
        auto pcol = [&](int sid, int i, int j) {
            int blk = (phase == 0) ? sid : sid - 2;
            return (blk * dim + i) * dim + j;
        };
        std::vector<std::vector<Rat>> rows;
        std::vector<Rat> rhs;
        auto val_of = [&](int sid, int e) -> SpMat<Rat> {
            if (e <= ser.depth) return ser.s[sid][e];
            // e == top and sid already solved in phase 0
            return solved[sid] * zfac[sid];
        };
        for (const auto& rel : ec::relations(q)) {
            for (int a = 0; a <= top; ++a) {
                for (int b = 0; b <= top; ++b) {
                    std::vector<std::map<int, Rat>> irow(dim * dim);
                    SpMat<Rat> cst(dim, dim);
                    bool ok = true, any_unknown = false;
                    for (const auto& t : rel.terms) {
                        int x = (t.v1_is_a ? a - t.da : b - t.db);
                        int y = (t.v2_is_a ? a - t.da : b - t.db);
                        if (x < 0 || y < 0) continue;
                        bool u1 = (x == top) && in_phase(t.s1);
                        bool u2 = (y == top) && in_phase(t.s2);
                        bool k1 = !u1 && ((x <= ser.depth) || (x == top && phase == 1 && !in_phase(t.s1)));
                        bool k2 = !u2 && ((y <= ser.depth) || (y == top && phase == 1 && !in_phase(t.s2)));
                        // a known-zero factor kills the term regardless of the other side
                        if (k1 && val_of(t.s1, x).is_zero()) continue;
                        if (k2 && val_of(t.s2, y).is_zero()) continue;
                        if ((!u1 && !k1) || (!u2 && !k2)) { ok = false; break; }
                        if (u1 && u2) { ok = false; break; }
                        if (!u1 && !u2) {
                            cst = cst + val_of(t.s1, x) * val_of(t.s2, y) * t.coef;
                        } else if (u1) {
                            any_unknown = true;
                            const auto m2 = val_of(t.s2, y);
                            Rat c0 = t.coef * zfac[t.s1];
                            for (int k = 0; k < dim; ++k)
                                for (const auto& [cc, v] : m2.row(k))
                                    for (int r = 0; r < dim; ++r)
                                        irow[r * dim + cc][pcol(t.s1, r, k)] += c0 * v;
                        } else {
                            any_unknown = true;
                            const auto m1 = val_of(t.s1, x);
                            Rat c0 = t.coef * zfac[t.s2];
                            for (int r = 0; r < dim; ++r)
                                for (const auto& [k, v] : m1.row(r))
                                    for (int c = 0; c < dim; ++c)
                                        irow[r * dim + c][pcol(t.s2, k, c)] += c0 * v;
                        }
                    }
                    if (!ok || !any_unknown) continue;
                    for (int r = 0; r < dim; ++r)
                        for (int c = 0; c < dim; ++c) {
                            auto& m = irow[r * dim + c];
                            Rat kv = cst.get(r, c);
                            bool allz = sgn(kv) == 0;
                            for (auto it = m.begin(); it != m.end();) {
                                if (sgn(it->second) == 0)
                                    it = m.erase(it);
                                else {
                                    allz = false;
                                    ++it;
                                }
                            }
                            if (allz) continue;
                            std::vector<Rat> dense(ncols, Rat(0));
                            for (auto& [cc, v] : m) dense[cc] = v;
                            rows.push_back(std::move(dense));
                            rhs.push_back(-kv);
                        }
                }
            }
        }
        auto res = solve_linear(rows, rhs);
        if (!res.consistent)
            throw error("level closure inconsistent at depth " + std::to_string(d) + " phase " +
                        std::to_string(phase));
        for (int bi = 0; bi < 2; ++bi) {
            int blk = blocks[bi];
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    solved[blk].set(i, j, res.particular[(bi * dim + i) * dim + j]);
        }
        for (auto& v : res.nullspace) {
            std::vector<SpMat<Rat>> m(4, SpMat<Rat>(dim, dim));
            for (int bi = 0; bi < 2; ++bi) {
                int blk = blocks[bi];
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j) m[blk].set(i, j, v[(bi * dim + i) * dim + j]);
            }
            slack_all.push_back(std::move(m));
        }
    }
    LevelSolution out;
    out.modes = solved;
    out.slack = std::move(slack_all);
    return out;
}}  // namespace

Chain build_chain_internal(const ModelParams& p, int sites, int depth, FamilyKind kind,
                           const std::vector<std::vector<Rat>>* alphas) {
    Chain ch;
    ch.fam = build_fundamentals(p, sites, kind);
    for (int d = 1; d < depth; ++d) {
        auto sol = solve_level(ch.fam, d);
        auto modes = sol.modes;
        if (alphas && d - 1 < static_cast<int>(alphas->size())) {
            const auto& al = (*alphas)[d - 1];
            if (al.size() != sol.slack.size())
                throw error("slack dimension changed at level " + std::to_string(d));
            for (std::size_t i = 0; i < al.size(); ++i)
                if (sgn(al[i]) != 0)
                    for (int blk = 0; blk < 4; ++blk)
                        modes[blk] = modes[blk] + sol.slack[i][blk] * al[i];
        }
        ch.fam.wm.push_back(modes[0]);
        ch.fam.wp.push_back(modes[1]);
        ch.fam.g.push_back(modes[2]);
        ch.fam.gt.push_back(modes[3]);
        ch.fam.depth = d + 1;
        ch.slack.push_back(sol.slack);
    }
    return ch;
}

GeneratorFamily build_family(const ModelParams& p, int sites, int depth, FamilyKind kind) {
    if (depth < 1) throw domain_error("build_family: depth must be >= 1");
    if (kind == FamilyKind::aq_bar || kind == FamilyKind::aq_diag_bar) {
        FamilyKind plain = kind == FamilyKind::aq_bar ? FamilyKind::aq : FamilyKind::aq_diag;
        GeneratorFamily base = build_family(p.swapped_for_bar(), sites, depth, plain);
        GeneratorFamily f;
        f.kind = kind;
        f.sites = sites;
        f.depth = depth;
        f.params = p;
        for (int k = 0; k < depth; ++k) {
            f.wm.push_back(reverse_sites(base.wp[k], sites));
            f.wp.push_back(reverse_sites(base.wm[k], sites));
            f.g.push_back(reverse_sites(base.gt[k], sites));
            f.gt.push_back(reverse_sites(base.g[k], sites));
        }
        return f;
    }
    if (depth == 1) return build_fundamentals(p, sites, kind);
    return pin_family(p, sites, depth, kind);
}

}  // namespace qons
