#ifndef QONS_QSERIES_HPP
#define QONS_QSERIES_HPP

#include <array>

#include "qons/scalar.hpp"

namespace qons {

// Numeric evaluation of the infinite products and scalar factors, with
// truncation metadata. All evaluations are deterministic for fixed order.
struct QEval {
    Cplx value;
    double error_proxy;  // magnitude of the last correction factor
    int order;
};

class QSeries {
  public:
    explicit QSeries(double q, int default_order = 64, double tol = 1e-15)
        : q_(q), order_(default_order), tol_(tol) {
        if (std::abs(q) >= 1.0) throw domain_error("QSeries: |q| must be < 1");
    }

    double q() const { return q_; }

    // (z; p)_infty as a partial product with adaptive doubling
    QEval qpoch(Cplx z, Cplx p) const;
    static QEval qpoch_fixed(Cplx z, Cplx p, int terms);

    Cplx theta(Cplx p, Cplx z) const;   // Theta_p(z) = (z;p)(p/z;p)(p;p)
    Cplx kappa(Cplx zeta) const;
    Cplx tau(Cplx zeta) const;
    Cplx g_invert() const;              // (q^2;q^4)/(q^4;q^4)
    Cplx delta_fn(Cplx z) const;        // (q^6 z^2; q^8)/(q^8 z^2; q^8)
    Cplx phi_tilde(Cplx z, Cplx r) const;
    Cplx varphi(Cplx z, Cplx r) const { return delta_fn(z) * phi_tilde(z, r); }
    Cplx lambda_pm(Cplx zeta) const;    // boundary eigenvalue of the W currents
    Cplx capital_lambda(Cplx zeta, Cplx r) const;
    Cplx rho_norm(Cplx zeta, Cplx eps_p, Cplx eps_m, Cplx r) const;

    // numeric R-matrix (principal picture) including the kappa normalization
    std::array<std::array<Cplx, 4>, 4> rmatrix(Cplx zeta) const;

    struct ConstraintReport {
        double rho_ratio = 0, rho_product = 0, rho_at_one = 0;
        double unitarity = 0, crossing = 0;
        bool pass(double tol_constr, double tol_r) const {
            return rho_ratio < tol_constr && rho_product < tol_constr && rho_at_one < tol_constr &&
                   unitarity < tol_r && crossing < tol_r;
        }
    };
    ConstraintReport check_constraints(Cplx eps_p, Cplx eps_m, Cplx r,
                                       const std::vector<Cplx>& zetas) const;

  private:
    double q_;
    int order_;
    double tol_;
};

}  // namespace qons

#endif
