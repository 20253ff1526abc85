#include "onsager_internal.hpp"

namespace qons {

namespace {

// block-diagonal stack of the two W strands
SpMat<Rat> stack2(const SpMat<Rat>& a, const SpMat<Rat>& b) {
    int dim = a.rows();
    SpMat<Rat> out(2 * dim, 2 * dim);
    for (int i = 0; i < dim; ++i) {
        for (const auto& [j, v] : a.row(i)) out.set(i, j, v);
        for (const auto& [j, v] : b.row(i)) out.set(dim + i, dim + j, v);
    }
    return out;
}

struct AffineFamily {
    // avec-parametrized chain: base + directions
    std::vector<Rat> base;                   // current alpha values
    std::vector<std::vector<Rat>> dirs;      // residual family directions in alpha space
};

}  // namespace

// Fixes the per-level closure freedom so that the finite-chain truncation
// relations hold: one coefficient profile annihilates all four strands (the
// W strands up to identity inhomogeneities, the G strands exactly, with the
// diagonal kind's Z strands shifted per the K/Z substitution rule).
GeneratorFamily pin_family(const ModelParams& p, int sites, int depth, FamilyKind kind) {
    const int N = sites;
    // no slice condition fits in this depth: fall back to the particular chain
    if (depth - 1 < N) {
        auto ch = build_chain_internal(p, sites, depth, kind, nullptr);
        return ch.fam;
    }
    // 1. alpha = 0 chain and slack layout
    auto ch0 = build_chain_internal(p, sites, depth, kind, nullptr);
    std::vector<int> nsl;
    int nalpha = 0;
    for (auto& s : ch0.slack) {
        nsl.push_back(static_cast<int>(s.size()));
        nalpha += static_cast<int>(s.size());
    }
    if (nalpha == 0) return ch0.fam;
    auto unflatten = [&](const std::vector<Rat>& avec) {
        std::vector<std::vector<Rat>> al;
        int idx = 0;
        for (int n : nsl) {
            al.emplace_back(avec.begin() + idx, avec.begin() + idx + n);
            idx += n;
        }
        return al;
    };
    auto build = [&](const std::vector<Rat>& avec) {
        auto al = unflatten(avec);
        return build_chain_internal(p, sites, depth, kind, &al).fam;
    };
    int dim = ch0.fam.dim();
    auto Id = SpMat<Rat>::identity(dim);
    auto Z0 = SpMat<Rat>::zero(dim);
    auto IdS1 = stack2(Id, Z0);
    auto IdS2 = stack2(Z0, Id);

    // 2. Stage A: shared coefficient profile from the joint W-strand nullspace
    std::vector<SpMat<Rat>> cols;
    for (int j = 0; j <= N; ++j) cols.push_back(stack2(ch0.fam.wm[j], ch0.fam.wp[j]));
    cols.push_back(IdS1);
    cols.push_back(IdS2);
    auto null = nullspace_of_columns(cols);
    std::vector<Rat> v0;
    for (auto& v : null)
        if (sgn(v[1]) != 0) {
            v0 = v;
            break;
        }
    if (v0.empty()) throw error("pin: no W-strand truncation relation with usable profile");
    {
        Rat n1 = v0[1];
        for (auto& x : v0) x /= n1;
    }

    // 3. contamination coefficients: the alpha directions shift the stacked
    //    W columns along col_0 and the identity blocks only; the col_0 part
    //    feeds the affine correction of the profile's leading coefficient.
    std::vector<Rat> probe_zero(nalpha, Rat(0));
    std::vector<GeneratorFamily> probes;
    for (int i = 0; i < nalpha; ++i) {
        auto pv = probe_zero;
        pv[i] = 1;
        probes.push_back(build(pv));
    }
    std::map<int, Rat> g0lin;  // alpha index -> correction coefficient
    for (int j = 1; j <= N; ++j) {
        for (int i = 0; i < nalpha; ++i) {
            auto dd = stack2(probes[i].wm[j] - ch0.fam.wm[j], probes[i].wp[j] - ch0.fam.wp[j]);
            if (dd.is_zero()) continue;
            auto fitted = fit_in_span(dd, {cols[0], IdS1, IdS2});
            if (!fitted) throw error("pin: alpha contamination outside the expected span");
            if (sgn((*fitted)[0]) != 0) g0lin[i] += -v0[j] * (*fitted)[0];
        }
    }

    Rat zshift = ch0.fam.z_shift();
    std::vector<Rat> avec(nalpha, Rat(0));
    std::vector<std::vector<Rat>> fam_dirs;  // unresolved family directions

    // 4. slice conditions s = N .. depth-1, processed low to high; each solve is
    //    linear in the not-yet-pinned alphas (unknowns of the slice) plus the
    //    carried family directions.
    auto strand = [&](const GeneratorFamily& f, int st, int j) -> SpMat<Rat> {
        switch (st) {
            case 0: return f.g[j] + Id * zshift;
            case 1: return f.gt[j] + Id * zshift;
            case 2: return f.wm[j];
            default: return f.wp[j];
        }
    };
    int first = 0;
    for (int lev = 1; lev <= N && lev <= depth - 1; ++lev) first += nsl[lev - 1];
    int pos_lo = 0, pos_hi = first;  // unknown alpha index range for the current slice
    for (int s = N; s <= depth - 1; ++s) {
        std::vector<int> unk;
        for (int i = pos_lo; i < pos_hi; ++i) unk.push_back(i);
        int nun = static_cast<int>(unk.size());
        int ndir = static_cast<int>(fam_dirs.size());
        auto base = build(avec);
        std::vector<GeneratorFamily> pu, pd;
        for (int t : unk) {
            auto pv = avec;
            pv[t] += 1;
            pu.push_back(build(pv));
        }
        for (auto& dv : fam_dirs) {
            auto pv = avec;
            for (int i = 0; i < nalpha; ++i) pv[i] += dv[i];
            pd.push_back(build(pv));
        }
        // gamma0 affine expression in the alphas
        Rat g0_const = v0[0];
        for (auto& [i, c] : g0lin) g0_const += c * avec[i];
        int nunk = nun + ndir + 2;
        std::vector<std::vector<Rat>> rows;
        std::vector<Rat> rhs;
        for (int st = 0; st < 4; ++st) {
            std::vector<SpMat<Rat>> X0, dU[8], dD[8];
            for (int j = 0; j <= N; ++j) X0.push_back(strand(base, st, s - N + j));
            std::vector<std::vector<SpMat<Rat>>> du(nun), dd(ndir);
            for (int t = 0; t < nun; ++t)
                for (int j = 0; j <= N; ++j) du[t].push_back(strand(pu[t], st, s - N + j) - X0[j]);
            for (int t = 0; t < ndir; ++t)
                for (int j = 0; j <= N; ++j) dd[t].push_back(strand(pd[t], st, s - N + j) - X0[j]);
            for (int rr = 0; rr < dim; ++rr) {
                for (int cc = 0; cc < dim; ++cc) {
                    std::vector<Rat> row(nunk, Rat(0));
                    Rat val(0);
                    for (int j = 0; j <= N; ++j) {
                        Rat x0 = X0[j].get(rr, cc);
                        if (j == 0) {
                            val += g0_const * x0;
                            for (int t = 0; t < nun; ++t) {
                                auto it = g0lin.find(unk[t]);
                                if (it != g0lin.end()) row[t] += it->second * x0;
                                row[t] += g0_const * du[t][0].get(rr, cc);
                            }
                            for (int t = 0; t < ndir; ++t) {
                                Rat gd(0);
                                for (auto& [i, c] : g0lin) gd += c * fam_dirs[t][i];
                                row[nun + t] += gd * x0 + g0_const * dd[t][0].get(rr, cc);
                            }
                        } else {
                            val += v0[j] * x0;
                            for (int t = 0; t < nun; ++t) row[t] += v0[j] * du[t][j].get(rr, cc);
                            for (int t = 0; t < ndir; ++t) row[nun + t] += v0[j] * dd[t][j].get(rr, cc);
                        }
                    }
                    if (st == 2 && rr == cc) row[nun + ndir] = 1;
                    if (st == 3 && rr == cc) row[nun + ndir + 1] = 1;
                    bool allz = sgn(val) == 0;
                    for (auto& x : row)
                        if (sgn(x) != 0) allz = false;
                    if (allz) continue;
                    rows.push_back(std::move(row));
                    rhs.push_back(-val);
                }
            }
        }
        auto res = solve_linear(rows, rhs);
        if (!res.consistent) throw error("pin: slice condition inconsistent at s=" + std::to_string(s));
        // fold solution: shift avec by the particular alphas and family contributions
        for (int t = 0; t < nun; ++t) avec[unk[t]] += res.particular[t];
        for (int t = 0; t < ndir; ++t) {
            Rat c = res.particular[nun + t];
            if (sgn(c) != 0)
                for (int i = 0; i < nalpha; ++i) avec[i] += c * fam_dirs[t][i];
        }
        std::vector<std::vector<Rat>> new_dirs;
        for (auto& dv : res.nullspace) {
            std::vector<Rat> fd(nalpha, Rat(0));
            for (int t = 0; t < nun; ++t) fd[unk[t]] = dv[t];
            for (int t = 0; t < ndir; ++t)
                if (sgn(dv[nun + t]) != 0)
                    for (int i = 0; i < nalpha; ++i) fd[i] += dv[nun + t] * fam_dirs[t][i];
            bool allz = true;
            for (auto& x : fd)
                if (sgn(x) != 0) allz = false;
            if (!allz) new_dirs.push_back(std::move(fd));
        }
        fam_dirs = std::move(new_dirs);
        // next slice's fresh unknowns
        pos_lo = pos_hi;
        if (s + 1 <= depth - 1) pos_hi = pos_lo + nsl[s];  // level s+1 alphas
    }
    if (!fam_dirs.empty())
        throw error("pin: residual gauge family of dimension " + std::to_string(fam_dirs.size()));
    return build(avec);
}

}  // namespace qons
