#include <set>
#include <optional>

#include "qons/lattice.hpp"

namespace qons {

namespace {

LaurentR lp(std::map<int, Rat> c) { return LaurentR(Var::zeta, std::move(c)); }
LaurentR lzero() { return LaurentR(Var::zeta); }

// operator-valued Laurent polynomial: dense matrix of LaurentR
struct OpPoly {
    int dim = 0;
    std::vector<std::vector<LaurentR>> m;
    explicit OpPoly(int d) : dim(d), m(d, std::vector<LaurentR>(d, lzero())) {}
};

OpPoly mul(const OpPoly& a, const OpPoly& b) {
    OpPoly out(a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int k = 0; k < a.dim; ++k) {
            if (a.m[i][k].is_zero()) continue;
            for (int j = 0; j < a.dim; ++j) {
                if (b.m[k][j].is_zero()) continue;
                out.m[i][j] = out.m[i][j] + a.m[i][k] * b.m[k][j];
            }
        }
    return out;
}
OpPoly add(const OpPoly& a, const OpPoly& b) {
    OpPoly out(a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) out.m[i][j] = a.m[i][j] + b.m[i][j];
    return out;
}

}  // namespace

LMat rbar_matrix(const Rat& q) {
    Rat qi = Rat(1) / q;
    LaurentR zq = lp({{1, q}, {-1, -qi}});
    LaurentR zz = lp({{1, Rat(1)}, {-1, Rat(-1)}});
    LaurentR qq = lp({{0, q - qi}});
    LMat r(4, std::vector<LaurentR>(4, lzero()));
    r[0][0] = zq;
    r[1][1] = zz;
    r[1][2] = qq;
    r[2][1] = qq;
    r[2][2] = zz;
    r[3][3] = zq;
    return r;
}

LMat kminus_matrix(const ModelParams& p) {
    Rat qm = p.q - p.qinv();
    LMat k(2, std::vector<LaurentR>(2, lzero()));
    k[0][0] = lp({{1, p.eps_p}, {-1, p.eps_m}});
    k[1][1] = lp({{1, p.eps_m}, {-1, p.eps_p}});
    k[0][1] = lp({{2, p.k_p / qm}, {-2, -p.k_p / qm}});
    k[1][0] = lp({{2, p.k_m / qm}, {-2, -p.k_m / qm}});
    return k;
}

LMat kplus_matrix(const ModelParams& p) {
    const Rat& q = p.q;
    Rat qi = p.qinv();
    Rat qm = q - qi;
    LMat k(2, std::vector<LaurentR>(2, lzero()));
    k[0][0] = lp({{1, q * p.beps_p}, {-1, qi * p.beps_m}});
    k[1][1] = lp({{1, q * p.beps_m}, {-1, qi * p.beps_p}});
    k[0][1] = lp({{2, q * q * p.bk_p / qm}, {-2, -p.bk_p / (q * q * qm)}});
    k[1][0] = lp({{2, q * q * p.bk_m / qm}, {-2, -p.bk_m / (q * q * qm)}});
    return k;
}

bool check_k_duality(const ModelParams& p) {
    // K_+(zeta) = -K_-^t(-zeta^{-1}q^{-1}) with eps_pm -> beps_mp, k_pm -> bk_mp
    ModelParams sw = p;
    sw.eps_p = p.beps_m;
    sw.eps_m = p.beps_p;
    sw.k_p = p.bk_m;
    sw.k_m = p.bk_p;
    LMat km = kminus_matrix(sw);
    LMat kp = kplus_matrix(p);
    // substitute zeta -> -zeta^{-1} q^{-1} in km^t: zeta^e -> (-1)^e q^{-e} zeta^{-e}
    Rat qi = p.qinv();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            LaurentR sub(Var::zeta);
            for (const auto& [e, v] : km[j][i].coeffs()) {
                Rat f = v * Laurent<Rat>::ipow(-qi, e);
                sub.add_to(-e, f);
            }
            if (!((sub * Rat(-1)) == kp[i][j])) return false;
        }
    return true;
}

TransferMatrix build_transfer(const ModelParams& p, int sites) {
    p.validate();
    const Rat& q = p.q;
    Rat qi = p.qinv();
    // Sklyanin dressing in auxiliary block form; blocks act on the chain.
    LaurentR zq = lp({{1, q}, {-1, -qi}});
    LaurentR zz = lp({{1, Rat(1)}, {-1, Rat(-1)}});
    LaurentR qq = lp({{0, q - qi}});
    LMat km = kminus_matrix(p);
    OpPoly A(1), B(1), C(1), D(1);
    A.m[0][0] = km[0][0];
    B.m[0][0] = km[0][1];
    C.m[0][0] = km[1][0];
    D.m[0][0] = km[1][1];
    for (int n = 1; n <= sites; ++n) {
        int dim = 1 << (n - 1);
        int nd = 2 * dim;
        // site operators of R embedded at the new leftmost site
        auto esite = [&](const LaurentR& up_up, const LaurentR& dn_dn, const LaurentR& off,
                         bool off_upper) {
            OpPoly out(nd);
            for (int t = 0; t < dim; ++t) {
                out.m[t][t] = up_up;
                out.m[dim + t][dim + t] = dn_dn;
                if (!off.is_zero()) {
                    if (off_upper)
                        out.m[t][dim + t] = off;
                    else
                        out.m[dim + t][t] = off;
                }
            }
            return out;
        };
        OpPoly Ra = esite(zq, zz, lzero(), true);
        OpPoly Rd = esite(zz, zq, lzero(), true);
        OpPoly Rb = esite(lzero(), lzero(), qq, false);  // (q-q^{-1}) sigma_-
        OpPoly Rc = esite(lzero(), lzero(), qq, true);   // (q-q^{-1}) sigma_+
        auto eold = [&](const OpPoly& M) {
            OpPoly out(nd);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                    if (M.m[i][j].is_zero()) continue;
                    out.m[i][j] = M.m[i][j];
                    out.m[dim + i][dim + j] = M.m[i][j];
                }
            return out;
        };
        OpPoly Ax = eold(A), Bx = eold(B), Cx = eold(C), Dx = eold(D);
        OpPoly M11 = add(mul(Ra, Ax), mul(Rb, Cx));
        OpPoly M12 = add(mul(Ra, Bx), mul(Rb, Dx));
        OpPoly M21 = add(mul(Rc, Ax), mul(Rd, Cx));
        OpPoly M22 = add(mul(Rc, Bx), mul(Rd, Dx));
        A = add(mul(M11, Ra), mul(M12, Rc));
        B = add(mul(M11, Rb), mul(M12, Rd));
        C = add(mul(M21, Ra), mul(M22, Rc));
        D = add(mul(M21, Rb), mul(M22, Rd));
    }
    LMat kp = kplus_matrix(p);
    int dim = 1 << sites;
    OpPoly trace(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            trace.m[i][j] = kp[0][0] * A.m[i][j] + kp[0][1] * C.m[i][j] + kp[1][0] * B.m[i][j] +
                            kp[1][1] * D.m[i][j];
    // collect coefficient matrices
    int lo = 0, hi = 0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (!trace.m[i][j].is_zero()) {
                lo = std::min(lo, trace.m[i][j].lo());
                hi = std::max(hi, trace.m[i][j].hi());
            }
    TransferMatrix t;
    t.sites = sites;
    t.params = p;
    t.lo = lo;
    t.coeff.assign(hi - lo + 1, SpMat<Rat>(dim, dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (const auto& [e, v] : trace.m[i][j].coeffs()) t.coeff[e - lo].set(i, j, v);
    return t;
}

SpMat<Rat> TransferMatrix::eval(const Rat& zeta) const {
    SpMat<Rat> out(dim(), dim());
    for (std::size_t k = 0; k < coeff.size(); ++k)
        out = out + coeff[k] * Laurent<Rat>::ipow(zeta, lo + static_cast<int>(k));
    return out;
}

SpMat<Rat> TransferMatrix::eval_derivative(const Rat& zeta) const {
    SpMat<Rat> out(dim(), dim());
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        int e = lo + static_cast<int>(k);
        if (e == 0) continue;
        out = out + coeff[k] * (Rat(e) * Laurent<Rat>::ipow(zeta, e - 1));
    }
    return out;
}

bool transfer_commutes(const TransferMatrix& t) {
    for (std::size_t a = 0; a < t.coeff.size(); ++a)
        for (std::size_t b = a + 1; b < t.coeff.size(); ++b)
            if (!comm(t.coeff[a], t.coeff[b]).is_zero()) return false;
    return true;
}

SpMat<Rat> hamiltonian_direct(const ModelParams& p, int sites) {
    const Rat& q = p.q;
    Rat qi = p.qinv();
    Rat delta = (q + qi) / 2;
    int dim = 1 << sites;
    SpMat<Rat> h(dim, dim);
    auto sp = sigma_p<Rat>();
    auto sm = sigma_m<Rat>();
    auto s3 = sigma_3<Rat>();
    for (int k = 1; k < sites; ++k) {
        // sigma1 sigma1 + sigma2 sigma2 = 2(sigma+ sigma- + sigma- sigma+)
        auto pair = kron(sp, sm) + kron(sm, sp);
        h = h + tensor_embed(pair * Rat(2), k, 2, sites);
        h = h + tensor_embed(kron(s3, s3) * delta, k, 2, sites);
    }
    if (sgn(p.eps_p + p.eps_m) == 0) throw domain_error("H: eps_+ + eps_- = 0");
    if (sgn(p.beps_p + p.beps_m) == 0) throw domain_error("H: beps_+ + beps_- = 0");
    Rat c3 = (q - qi) / 2 * (p.eps_p - p.eps_m) / (p.eps_p + p.eps_m);
    Rat cpm = Rat(2) / (p.eps_p + p.eps_m);
    h = h + tensor_embed(s3 * c3 + (sp * p.k_p + sm * p.k_m) * cpm, 1, 1, sites);
    Rat b3 = (q - qi) / 2 * (p.beps_p - p.beps_m) / (p.beps_p + p.beps_m);
    Rat bpm = Rat(2) / (p.beps_p + p.beps_m);
    h = h + tensor_embed(s3 * b3 + (sp * p.bk_p + sm * p.bk_m) * bpm, sites, 1, sites);
    return h;
}

HamiltonianExtraction extract_hamiltonian(const TransferMatrix& t) {
    const ModelParams& p = t.params;
    const Rat& q = p.q;
    Rat qi = p.qinv();
    int dim = t.dim();
    HamiltonianExtraction out{SpMat<Rat>(dim, dim), Rat(0), false, false};
    auto t1 = t.eval(Rat(1));
    Rat scalar = t1.get(0, 0);
    out.t1_scalar = (t1 - SpMat<Rat>::identity(dim) * scalar).is_zero() && sgn(scalar) != 0;
    if (!out.t1_scalar) throw error("extract_hamiltonian: t(1) is not a nonzero scalar");
    // the scalar normalization (z^2+z^-2-q^2-q^-2)^{-N} has zero log-derivative
    // at zeta = 1, so dlog t(1) is carried by the polynomial part alone
    auto dlog = t.eval_derivative(Rat(1)) * (Rat(1) / scalar);
    Rat delta = (q + qi) / 2;
    Rat c = (q - qi) / (q + qi) + Rat(2 * t.sites) * delta / (q - qi);
    out.identity_coeff = c;
    out.hamiltonian = (dlog - SpMat<Rat>::identity(dim) * c) * ((q - qi) / 2);
    out.matches_direct = (out.hamiltonian == hamiltonian_direct(p, t.sites));
    return out;
}

OnsagerFit fit_onsager_decomposition(const TransferMatrix& t,
                                     const std::vector<SpMat<Rat>>& hierarchy) {
    OnsagerFit out;
    int dim = t.dim();
    std::vector<SpMat<Rat>> basis = hierarchy;
    basis.push_back(SpMat<Rat>::identity(dim));
    int nb = static_cast<int>(basis.size());
    std::vector<LaurentR> fs(nb, lzero());
    for (std::size_t k = 0; k < t.coeff.size(); ++k) {
        if (t.coeff[k].is_zero()) continue;
        auto fit = fit_in_span(t.coeff[k], basis);
        if (!fit) {
            out.exact = false;
            out.bad_power = t.lo + static_cast<int>(k);
            return out;
        }
        for (int b = 0; b < nb; ++b) fs[b].add_to(t.lo + static_cast<int>(k), (*fit)[b]);
    }
    out.exact = true;
    for (int b = 0; b + 1 < nb; ++b) out.f_odd.push_back(fs[b]);
    out.f0 = fs[nb - 1];
    // re-express the odd coefficient functions as polynomials in U(zeta)
    const Rat& q = t.params.q;
    Rat qi = t.params.qinv();
    LaurentR U = lp({{2, q / (q + qi)}, {-2, qi / (q + qi)}});
    int maxdeg = t.sites + 2;
    std::vector<LaurentR> upow{lp({{0, Rat(1)}})};
    for (int m = 1; m <= maxdeg; ++m) upow.push_back(upow.back() * U);
    out.u_polynomial = true;
    for (auto& f : out.f_odd) {
        // solve f = sum a_m U^m exactly
        std::set<int> exps;
        for (auto& [e, v] : f.coeffs()) exps.insert(e);
        for (auto& u : upow)
            for (auto& [e, v] : u.coeffs()) exps.insert(e);
        std::vector<std::vector<Rat>> rows;
        std::vector<Rat> rhs;
        for (int e : exps) {
            std::vector<Rat> row;
            for (auto& u : upow) row.push_back(u.coeff(e));
            rows.push_back(std::move(row));
            rhs.push_back(f.coeff(e));
        }
        auto res = solve_linear(rows, rhs);
        if (!res.consistent) {
            out.u_polynomial = false;
            out.f_odd_in_u.emplace_back(Var::U);
            continue;
        }
        LaurentR fu(Var::U);
        for (int m = 0; m <= maxdeg; ++m) fu.set(m, res.particular[m]);
        out.f_odd_in_u.push_back(fu);
    }
    out.f0_even = true;
    for (auto& [e, v] : out.f0.coeffs())
        if (e % 2 != 0) out.f0_even = false;
    return out;
}

SpMat<Rat> hamiltonian_semi_truncated(const ModelParams& p, int sites) {
    const Rat& q = p.q;
    Rat qi = p.qinv();
    Rat delta = (q + qi) / 2;
    int dim = 1 << sites;
    SpMat<Rat> h(dim, dim);
    auto sp = sigma_p<Rat>();
    auto sm = sigma_m<Rat>();
    auto s3 = sigma_3<Rat>();
    Rat half(1, 2);
    for (int k = 1; k < sites; ++k) {
        auto pair = kron(sp, sm) + kron(sm, sp);
        h = h - tensor_embed(pair * Rat(2) * half, k, 2, sites);
        h = h - tensor_embed(kron(s3, s3) * (delta * half), k, 2, sites);
    }
    if (sgn(p.eps_p + p.eps_m) == 0) throw domain_error("H_semi: eps_+ + eps_- = 0");
    Rat c3 = (q - qi) / 4 * (p.eps_p - p.eps_m) / (p.eps_p + p.eps_m);
    Rat cpm = Rat(1) / (p.eps_p + p.eps_m);
    h = h - tensor_embed(s3 * c3 + (sp * p.k_p + sm * p.k_m) * cpm, 1, 1, sites);
    return h;
}

SymmetryLocality boundary_symmetry_residual(const ModelParams& p, int sites, bool diagonal,
                                            int generator_index) {
    ModelParams pp = p;
    if (diagonal) {
        pp.k_p = 0;
        pp.k_m = 0;
    }
    auto fam = build_fundamentals(pp, sites, diagonal ? FamilyKind::aq_diag : FamilyKind::aq);
    SpMat<Rat> a = fam.wm[0];
    if (generator_index == 1) a = fam.wp[0];
    if (generator_index == 2) a = fam.g[0];
    if (generator_index == 3) a = fam.gt[0];
    auto h = hamiltonian_semi_truncated(pp, sites);
    auto c = comm(h, a);
    SymmetryLocality out{false, sites, SpMat<Rat>(1, 1), false};
    // minimal leftmost support: smallest m with c = D (x) I^{(N-m)}
    int dim = 1 << sites;
    for (int m = 0; m <= sites; ++m) {
        int dm = 1 << m;
        int rest = dim / dm;
        // candidate D from the rest-diagonal blocks
        SpMat<Rat> dcand(dm, dm);
        for (int A = 0; A < dm; ++A)
            for (int B = 0; B < dm; ++B) dcand.set(A, B, c.get(A * rest, B * rest));
        if (kron(dcand, SpMat<Rat>::identity(rest)) == c) {
            out.support = m;
            out.edge = dcand;
            out.factorizes = (m <= 2);
            break;
        }
    }
    // boundary-term identity: [h_b, W0] = (q - q^{-1})/2 dressing (x) (k+ s+ - k- s-);
    // for the diagonal quadruple the site-1 contributions cancel instead.
    SpMat<Rat> hb(dim, dim);
    {
        const Rat& q = pp.q;
        Rat qi = pp.qinv();
        Rat c3 = (q - qi) / 4 * (pp.eps_p - pp.eps_m) / (pp.eps_p + pp.eps_m);
        Rat cpm = Rat(1) / (pp.eps_p + pp.eps_m);
        hb = (tensor_embed(sigma_3<Rat>() * c3 +
                               (sigma_p<Rat>() * pp.k_p + sigma_m<Rat>() * pp.k_m) * cpm,
                           1, 1, sites)) *
             Rat(-1);
    }
    auto bc = comm(hb, a);
    if (!diagonal && generator_index == 0) {
        const Rat& q = pp.q;
        Rat qi = pp.qinv();
        SpMat<Rat> dress = SpMat<Rat>::identity(1);
        for (int s = 0; s < sites - 1; ++s) dress = kron(dress, q_sigma3<Rat>(q));
        auto expect = kron(dress, sigma_p<Rat>() * pp.k_p - sigma_m<Rat>() * pp.k_m) * ((q - qi) / 2);
        out.boundary_term_matches = (bc == expect);
    } else if (diagonal) {
        // diagonal regime: [h_b, K_0] = 0 (the boundary field is diagonal too)
        out.boundary_term_matches = generator_index <= 1 ? bc.is_zero() : true;
    } else {
        out.boundary_term_matches = true;
    }
    return out;
}

}  // namespace qons
