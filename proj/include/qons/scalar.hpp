#ifndef QONS_SCALAR_HPP
#define QONS_SCALAR_HPP

#include <complex>
#include <cstdint>
#include <gmpxx.h>
#include <random>
#include <stdexcept>
#include <string>

namespace qons {

using Rat = mpq_class;
using Cplx = std::complex<double>;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// incompatible formal variables or scalar backends
struct mismatch_error : error {
    using error::error;
};
// argument outside the validated domain (annulus, |p|>=1, ...)
struct domain_error : error {
    using error::error;
};
// a mode/coefficient beyond the constructed depth was requested
struct depth_error : error {
    using error::error;
};

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

inline Rat rat_parse(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw error("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline double to_double(const Rat& r) { return r.get_d(); }
inline Cplx to_cplx(const Rat& r) { return Cplx(r.get_d(), 0.0); }

template <class T> struct scalar_traits;
template <> struct scalar_traits<Rat> {
    static bool is_zero(const Rat& x) { return sgn(x) == 0; }
    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
};
template <> struct scalar_traits<Cplx> {
    static bool is_zero(const Cplx& x) { return x == Cplx(0.0, 0.0); }
    static Cplx zero() { return {0.0, 0.0}; }
    static Cplx one() { return {1.0, 0.0}; }
};

// Random rational parameter draws for Schwartz-Zippel style identity checks.
// Numerators/denominators bounded by 97; q avoids {0, +-1} (no other rational
// root of unity exists) and values that would zero common denominators.
class ParamRng {
  public:
    explicit ParamRng(std::uint64_t seed) : eng_(seed) {}

    Rat rational(long lo = -97, long hi = 97) {
        std::uniform_int_distribution<long> num(lo, hi);
        std::uniform_int_distribution<long> den(1, 97);
        Rat r(num(eng_), den(eng_));
        r.canonicalize();
        return r;
    }
    Rat nonzero(long lo = -97, long hi = 97) {
        for (;;) {
            Rat r = rational(lo, hi);
            if (sgn(r) != 0) return r;
        }
    }
    Rat deformation() {  // q not in {0, +-1}
        for (;;) {
            Rat r = nonzero();
            if (r != 1 && r != -1) return r;
        }
    }
    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

}  // namespace qons

#endif
