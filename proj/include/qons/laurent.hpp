#ifndef QONS_LAURENT_HPP
#define QONS_LAURENT_HPP

#include <map>
#include <string>

#include "qons/scalar.hpp"

namespace qons {

enum class Var : std::uint8_t { zeta, U, w, z, delta };

inline const char* var_name(Var v) {
    switch (v) {
        case Var::zeta: return "zeta";
        case Var::U: return "U";
        case Var::w: return "w";
        case Var::z: return "z";
        case Var::delta: return "delta";
    }
    return "?";
}

// Laurent polynomial in one formal variable; no stored zero coefficients.
template <class T>
class Laurent {
  public:
    explicit Laurent(Var v = Var::zeta) : var_(v) {}
    Laurent(Var v, std::map<int, T> coeffs) : var_(v), c_(std::move(coeffs)) { prune(); }
    static Laurent mono(Var v, const T& coef, int exp) {
        Laurent p(v);
        p.set(exp, coef);
        return p;
    }
    static Laurent constant(Var v, const T& coef) { return mono(v, coef, 0); }

    Var var() const { return var_; }
    const std::map<int, T>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int lo() const { return c_.empty() ? 0 : c_.begin()->first; }
    int hi() const { return c_.empty() ? 0 : c_.rbegin()->first; }

    T coeff(int e) const {
        auto it = c_.find(e);
        return it == c_.end() ? scalar_traits<T>::zero() : it->second;
    }
    void set(int e, const T& v) {
        if (scalar_traits<T>::is_zero(v))
            c_.erase(e);
        else
            c_[e] = v;
    }
    void add_to(int e, const T& v) {
        auto it = c_.find(e);
        if (it == c_.end()) {
            if (!scalar_traits<T>::is_zero(v)) c_[e] = v;
        } else {
            it->second += v;
            if (scalar_traits<T>::is_zero(it->second)) c_.erase(it);
        }
    }

    Laurent operator+(const Laurent& o) const {
        require_var(o);
        Laurent out = *this;
        for (const auto& [e, v] : o.c_) out.add_to(e, v);
        return out;
    }
    Laurent operator-(const Laurent& o) const {
        require_var(o);
        Laurent out = *this;
        for (const auto& [e, v] : o.c_) out.add_to(e, -v);
        return out;
    }
    Laurent operator*(const Laurent& o) const {
        require_var(o);
        Laurent out(var_);
        for (const auto& [e1, v1] : c_)
            for (const auto& [e2, v2] : o.c_) out.add_to(e1 + e2, v1 * v2);
        return out;
    }
    Laurent operator*(const T& s) const {
        Laurent out(var_);
        for (const auto& [e, v] : c_) out.set(e, v * s);
        return out;
    }
    bool operator==(const Laurent& o) const { return var_ == o.var_ && c_ == o.c_; }

    // evaluation at a nonzero point
    T eval(const T& x) const {
        if (lo() < 0 && scalar_traits<T>::is_zero(x))
            throw domain_error("Laurent eval at 0 with negative exponents");
        T acc = scalar_traits<T>::zero();
        for (const auto& [e, v] : c_) acc += v * ipow(x, e);
        return acc;
    }
    Laurent derivative() const {  // d/dvar
        Laurent out(var_);
        for (const auto& [e, v] : c_)
            if (e != 0) out.set(e - 1, v * T(e));
        return out;
    }

    static T ipow(const T& x, int e) {
        T acc = scalar_traits<T>::one();
        T base = e >= 0 ? x : scalar_traits<T>::one() / x;
        for (int k = std::abs(e); k > 0; --k) acc *= base;
        return acc;
    }

  private:
    void require_var(const Laurent& o) const {
        if (var_ != o.var_)
            throw mismatch_error(std::string("variable mismatch: ") + var_name(var_) + " vs " +
                                 var_name(o.var_));
    }
    void prune() {
        for (auto it = c_.begin(); it != c_.end();)
            it = scalar_traits<T>::is_zero(it->second) ? c_.erase(it) : std::next(it);
    }
    Var var_;
    std::map<int, T> c_;
};

using LaurentR = Laurent<Rat>;

}  // namespace qons

#endif
