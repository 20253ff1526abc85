#ifndef QONS_SERIES_HPP
#define QONS_SERIES_HPP

#include <cmath>
#include <optional>

#include "qons/laurent.hpp"

namespace qons {

// Truncated formal series: coefficients are exact inside [lo, hi] and the
// series is identically zero below lo; nothing is claimed above hi.
template <class T>
class TruncSeries {
  public:
    TruncSeries(Var v, int lo, int hi) : var_(v), lo_(lo), hi_(hi), c_(v) {
        if (lo > hi) throw domain_error("series window empty");
    }
    static TruncSeries from_laurent(const Laurent<T>& p, int hi) {
        TruncSeries s(p.var(), std::min(p.lo(), hi), hi);
        for (const auto& [e, v] : p.coeffs())
            if (e <= hi) s.c_.set(e, v);
        return s;
    }

    Var var() const { return var_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    T coeff(int e) const {
        if (e < lo_) return scalar_traits<T>::zero();
        if (e > hi_) throw depth_error("series coefficient beyond truncation window");
        return c_.coeff(e);
    }
    void set(int e, const T& v) {
        if (e < lo_ || e > hi_) throw depth_error("series coefficient outside window");
        c_.set(e, v);
    }

    TruncSeries operator+(const TruncSeries& o) const {
        require_var(o);
        TruncSeries out(var_, std::min(lo_, o.lo_), std::min(hi_, o.hi_));
        for (int e = out.lo_; e <= out.hi_; ++e) out.c_.set(e, coeff(e) + o.coeff(e));
        return out;
    }
    TruncSeries operator-(const TruncSeries& o) const { return *this + (o * -scalar_traits<T>::one()); }
    TruncSeries operator*(const T& s) const {
        TruncSeries out = *this;
        out.c_ = c_ * s;
        return out;
    }
    TruncSeries operator*(const TruncSeries& o) const {
        require_var(o);
        // zero below lo -> product window: [lo+o.lo, min(hi+o.lo, o.hi+lo)]
        int plo = lo_ + o.lo_;
        int phi = std::min(hi_ + o.lo_, o.hi_ + lo_);
        TruncSeries out(var_, plo, phi);
        for (const auto& [e1, v1] : c_.coeffs())
            for (const auto& [e2, v2] : o.c_.coeffs())
                if (e1 + e2 <= phi) out.c_.add_to(e1 + e2, v1 * v2);
        return out;
    }
    // multiplicative inverse (leading coefficient must be nonzero)
    TruncSeries inverse() const {
        T lead = coeff(lo_);
        if (scalar_traits<T>::is_zero(lead)) throw domain_error("series inverse: zero leading term");
        int n = hi_ - lo_;
        TruncSeries out(var_, -lo_, -lo_ + n);
        out.c_.set(-lo_, scalar_traits<T>::one() / lead);
        for (int k = 1; k <= n; ++k) {
            T acc = scalar_traits<T>::zero();
            for (int j = 1; j <= k; ++j) acc += coeff(lo_ + j) * out.c_.coeff(-lo_ + k - j);
            out.c_.set(-lo_ + k, -acc / lead);
        }
        return out;
    }

    void set_annulus(double r_lo, double r_hi) { annulus_ = {r_lo, r_hi}; }

    // Partial sum at a point with the last retained term as error proxy.
    struct Eval {
        T value;
        double error_proxy;
    };
    Eval eval(const T& point, double abs_point) const {
        if (annulus_ && (abs_point < annulus_->first || abs_point > annulus_->second))
            throw domain_error("series_eval: point outside convergence annulus");
        T acc = scalar_traits<T>::zero();
        T last = scalar_traits<T>::zero();
        for (const auto& [e, v] : c_.coeffs()) {
            T term = v * Laurent<T>::ipow(point, e);
            acc += term;
            last = term;
        }
        return {acc, magnitude(last)};
    }

    static double magnitude(const T& x);

  private:
    void require_var(const TruncSeries& o) const {
        if (var_ != o.var_) throw mismatch_error("series variable mismatch");
    }
    Var var_;
    int lo_, hi_;
    Laurent<T> c_;
    std::optional<std::pair<double, double>> annulus_;
};

template <> inline double TruncSeries<Rat>::magnitude(const Rat& x) { return std::abs(x.get_d()); }
template <> inline double TruncSeries<Cplx>::magnitude(const Cplx& x) { return std::abs(x); }

}  // namespace qons

#endif
