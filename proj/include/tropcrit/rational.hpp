#ifndef TROPCRIT_RATIONAL_HPP
#define TROPCRIT_RATIONAL_HPP

// Exact scalars and integer/rational vectors used throughout the library.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <type_traits>
#include <vector>

#include "errors.hpp"

namespace tropcrit {

// Canonical (reduced, positive denominator) arbitrary-precision rational.
using Rational = mpq_class;
using Integer = mpz_class;

using IntVector = std::vector<long long>;
using RationalVector = std::vector<Rational>;

inline Rational make_rational(long long num, long long den = 1) {
    static_assert(sizeof(long) == sizeof(long long), "LP64 platform expected");
    Rational r(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
    r.canonicalize();
    return r;
}

// Parses "p", "-p" or "p/q" with decimal integers.
inline Rational parse_rational(const std::string& text) {
    Rational r;
    if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0)
        throw ValidationError("invalid rational literal '" + text + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline long long to_ll(const Integer& z) {
    if (!z.fits_slong_p())
        throw ResourceError("integer does not fit in 64 bits: " + z.get_str());
    return z.get_si();
}

inline long long gcd_of(const IntVector& v) {
    long long g = 0;
    for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

// Divides by the gcd of the entries; the zero vector is returned unchanged.
inline IntVector primitive(IntVector v) {
    long long g = gcd_of(v);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

// Clears denominators and divides by the content, keeping the direction.
inline IntVector primitive_integer(const RationalVector& v) {
    Integer l = 1;
    for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
    IntVector out;
    out.reserve(v.size());
    for (const auto& x : v) {
        Rational y = x * l;
        out.push_back(to_ll(y.get_num()));
    }
    return primitive(std::move(out));
}

// Flips the sign so that the first nonzero entry is positive.
inline IntVector sign_normalized(IntVector v) {
    for (long long x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
    return v;
}

inline long long dot(const IntVector& a, const IntVector& b) {
    long long s = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const IntVector& a, const RationalVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += make_rational(a[i]) * b[i];
    return s;
}

inline Rational dot(const RationalVector& a, const RationalVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
    return s;
}

// Converts an exact rational to a scalar type (Rational, floating or complex).
template<class K>
K rational_to(const Rational& c) {
    if constexpr (std::is_same_v<K, Rational>) {
        return c;
    } else {
        using Real = std::conditional_t<std::is_same_v<K, std::complex<long double>> || std::is_same_v<K, long double>,
                                        long double, double>;
        auto part = [](const Integer& z) {
            return z.fits_slong_p() ? static_cast<Real>(z.get_si()) : static_cast<Real>(z.get_d());
        };
        return K(part(c.get_num()) / part(c.get_den()));
    }
}

inline Rational to_rational(long long x) { return make_rational(x); }

inline RationalVector to_rational(const IntVector& v) {
    RationalVector out;
    out.reserve(v.size());
    for (long long x : v) out.push_back(make_rational(x));
    return out;
}

inline bool is_zero(const IntVector& v) {
    for (long long x : v)
        if (x != 0) return false;
    return true;
}

inline std::string to_string(const IntVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

} // namespace tropcrit

#endif
