#ifndef QONS_PARAMS_HPP
#define QONS_PARAMS_HPP

#include "qons/scalar.hpp"

namespace qons {

// Boundary couplings of the open chain: eps/k for the right boundary,
// beps/bk for the left one. Derived quantities are recomputed on demand.
struct ModelParams {
    Rat q;
    Rat eps_p, eps_m, k_p, k_m;      // right boundary
    Rat beps_p, beps_m, bk_p, bk_m;  // left boundary

    void validate() const {
        if (sgn(q) == 0 || q == 1 || q == -1) throw domain_error("q must avoid {0, +1, -1}");
    }
    Rat qinv() const { return Rat(1) / q; }
    Rat rho() const { return (q + qinv()) * (q + qinv()) * k_p * k_m; }
    Rat rho_bar() const { return (q + qinv()) * (q + qinv()) * bk_p * bk_m; }
    Rat rho_diag() const {
        Rat q2 = q * q, q3 = q2 * q;
        Rat a = q3 - Rat(1) / q3;
        Rat b = q2 - Rat(1) / q2;
        return a * b * b * b / (q - qinv());
    }
    bool right_diagonal() const { return sgn(k_p) == 0 && sgn(k_m) == 0; }
    bool left_diagonal() const { return sgn(bk_p) == 0 && sgn(bk_m) == 0; }
    Rat r() const {  // r = -eps_+/eps_-
        if (sgn(eps_m) == 0) throw domain_error("r undefined: eps_- = 0");
        return -eps_p / eps_m;
    }

    // swap conventions used by the barred families (elB1/elB2)
    ModelParams swapped_for_bar() const {
        ModelParams p = *this;
        std::swap(p.eps_p, p.beps_p);
        std::swap(p.eps_m, p.beps_m);
        std::swap(p.k_p, p.bk_p);
        std::swap(p.k_m, p.bk_m);
        return p;
    }

    static ModelParams random_generic(ParamRng& rng) {
        ModelParams p;
        p.q = rng.deformation();
        p.eps_p = rng.nonzero();
        p.eps_m = rng.nonzero();
        while (sgn(p.eps_p + p.eps_m) == 0) p.eps_m = rng.nonzero();
        p.k_p = rng.nonzero();
        p.k_m = rng.nonzero();
        p.beps_p = rng.nonzero();
        p.beps_m = rng.nonzero();
        while (sgn(p.beps_p + p.beps_m) == 0) p.beps_m = rng.nonzero();
        p.bk_p = rng.nonzero();
        p.bk_m = rng.nonzero();
        return p;
    }
    static ModelParams random_right_diagonal(ParamRng& rng) {
        ModelParams p = random_generic(rng);
        p.k_p = 0;
        p.k_m = 0;
        return p;
    }
};

}  // namespace qons

#endif
