#include <vector>

#include "qons/qseries.hpp"

namespace qons {

QEval QSeries::qpoch_fixed(Cplx z, Cplx p, int terms) {
    if (std::abs(p) >= 1.0) throw domain_error("qpoch: |p| must be < 1");
    Cplx acc(1.0, 0.0);
    Cplx pn(1.0, 0.0);
    double last = 0.0;
    for (int n = 0; n < terms; ++n) {
        Cplx factor = Cplx(1.0, 0.0) - z * pn;
        acc *= factor;
        last = std::abs(z * pn);
        pn *= p;
    }
    return {acc, last, terms};
}

QEval QSeries::qpoch(Cplx z, Cplx p) const {
    int n = order_;
    QEval cur = qpoch_fixed(z, p, n);
    for (int iter = 0; iter < 6; ++iter) {
        QEval next = qpoch_fixed(z, p, 2 * n);
        double diff = std::abs(next.value - cur.value);
        cur = next;
        n *= 2;
        if (diff < tol_) break;
    }
    return cur;
}

Cplx QSeries::theta(Cplx p, Cplx z) const {
    return qpoch(z, p).value * qpoch(p / z, p).value * qpoch(p, p).value;
}

Cplx QSeries::kappa(Cplx zeta) const {
    Cplx q2 = q_ * q_, q4 = q2 * q2;
    Cplx z2 = zeta * zeta, zi2 = Cplx(1.0, 0.0) / z2;
    return zeta * qpoch(q4 * z2, q4).value * qpoch(q2 * zi2, q4).value /
           (qpoch(q4 * zi2, q4).value * qpoch(q2 * z2, q4).value);
}

Cplx QSeries::tau(Cplx zeta) const {
    Cplx q4 = std::pow(Cplx(q_, 0.0), 4);
    Cplx z2 = zeta * zeta;
    return (Cplx(1.0, 0.0) / zeta) * theta(q4, Cplx(q_, 0.0) * z2) /
           theta(q4, Cplx(q_, 0.0) / z2);
}

Cplx QSeries::g_invert() const {
    Cplx q2 = q_ * q_, q4 = q2 * q2;
    return qpoch(q2, q4).value / qpoch(q4, q4).value;
}

Cplx QSeries::delta_fn(Cplx z) const {
    Cplx q2 = q_ * q_;
    Cplx q6 = q2 * q2 * q2, q8 = q6 * q2;
    return qpoch(q6 * z * z, q8).value / qpoch(q8 * z * z, q8).value;
}

Cplx QSeries::phi_tilde(Cplx z, Cplx r) const {
    Cplx q2 = q_ * q_, q4 = q2 * q2;
    return qpoch(q4 * r * z, q4).value / qpoch(q2 * r * z, q4).value;
}

Cplx QSeries::lambda_pm(Cplx zeta) const {
    Cplx q(q_, 0.0);
    Cplx zq = zeta * q;
    Cplx zqi = Cplx(1.0, 0.0) / zq;
    return (Cplx(1.0, 0.0) / g_invert()) * zqi / (zq * zq - zqi * zqi) * delta_fn(zq * zq) /
           delta_fn(zqi * zqi);
}

Cplx QSeries::capital_lambda(Cplx zeta, Cplx r) const {
    Cplx q2 = q_ * q_;
    Cplx z2 = zeta * zeta, zi2 = Cplx(1.0, 0.0) / z2;
    Cplx ri = Cplx(1.0, 0.0) / r;
    return z2 * phi_tilde(z2 / q2, ri) * phi_tilde(z2, r) /
           (phi_tilde(zi2 / q2, ri) * phi_tilde(zi2, r));
}

Cplx QSeries::rho_norm(Cplx zeta, Cplx eps_p, Cplx eps_m, Cplx r) const {
    Cplx z2 = zeta * zeta, zi2 = Cplx(1.0, 0.0) / z2;
    return (zeta * eps_m + eps_p / zeta) * delta_fn(zi2) / delta_fn(z2) * phi_tilde(zi2, r) /
           phi_tilde(z2, r);
}

std::array<std::array<Cplx, 4>, 4> QSeries::rmatrix(Cplx zeta) const {
    Cplx q(q_, 0.0);
    Cplx z2 = zeta * zeta;
    Cplx den = Cplx(1.0, 0.0) - q * q * z2;
    Cplx b = (Cplx(1.0, 0.0) - z2) * q / den;
    Cplx c = (Cplx(1.0, 0.0) - q * q) * zeta / den;
    Cplx k = Cplx(1.0, 0.0) / kappa(zeta);
    std::array<std::array<Cplx, 4>, 4> r{};
    r[0][0] = k;
    r[1][1] = b * k;
    r[1][2] = c * k;
    r[2][1] = c * k;
    r[2][2] = b * k;
    r[3][3] = k;
    return r;
}

QSeries::ConstraintReport QSeries::check_constraints(Cplx eps_p, Cplx eps_m, Cplx r,
                                                     const std::vector<Cplx>& zetas) const {
    ConstraintReport rep;
    Cplx q(q_, 0.0);
    Cplx one(1.0, 0.0);
    for (Cplx z : zetas) {
        Cplx zi = one / z;
        // rho(z)/rho(-1/(qz)) = -(z^2 - z^{-2}) / (kappa(-q z^2) (q^2 z^2 - q^{-2} z^{-2}))
        Cplx lhs = rho_norm(z, eps_p, eps_m, r) / rho_norm(-zi / q, eps_p, eps_m, r);
        Cplx z2 = z * z, zi2 = zi * zi;
        Cplx rhs = -(z2 - zi2) / (kappa(-q * z2) * (q * q * z2 - zi2 / (q * q)));
        rep.rho_ratio = std::max(rep.rho_ratio, std::abs(lhs - rhs));
        // rho(z) rho(1/z) = (e+ + e-)^2 + (z - 1/z)^2 e+ e-   (diagonal case)
        Cplx prod = rho_norm(z, eps_p, eps_m, r) * rho_norm(zi, eps_p, eps_m, r);
        Cplx target = (eps_p + eps_m) * (eps_p + eps_m) + (z - zi) * (z - zi) * eps_p * eps_m;
        rep.rho_product = std::max(rep.rho_product, std::abs(prod - target));
        // unitarity R(z) R(1/z) = I
        auto r1 = rmatrix(z);
        auto r2 = rmatrix(zi);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Cplx acc(0.0, 0.0);
                for (int t = 0; t < 4; ++t) acc += r1[i][t] * r2[t][j];
                rep.unitarity = std::max(rep.unitarity, std::abs(acc - (i == j ? one : Cplx())));
            }
        // crossing: R^{e2' e1}_{e2 e1'}(1/z) = R^{-e1' e2'}_{-e1 e2}(-z/q)
        auto rz = rmatrix(one / z);
        auto rc = rmatrix(-z / q);
        auto idx = [](int a, int b) { return (a == 1 ? 0 : 1) * 2 + (b == 1 ? 0 : 1); };
        for (int e1 : {1, -1})
            for (int e2 : {1, -1})
                for (int e1p : {1, -1})
                    for (int e2p : {1, -1}) {
                        Cplx lhsx = rz[idx(e2p, e1)][idx(e2, e1p)];
                        Cplx rhsx = rc[idx(-e1p, e2p)][idx(-e1, e2)];
                        rep.crossing = std::max(rep.crossing, std::abs(lhsx - rhsx));
                    }
    }
    Cplx rho1 = rho_norm(one, eps_p, eps_m, r);
    rep.rho_at_one = std::abs(rho1 - (eps_p + eps_m));
    return rep;
}

}  // namespace qons
