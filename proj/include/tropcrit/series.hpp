#ifndef TROPCRIT_SERIES_HPP
#define TROPCRIT_SERIES_HPP

// Truncated Laurent series in one variable t with coefficients in K
// (Rational, std::complex<double> or std::complex<long double>).
//
// A series knows its coefficients for exponents start()..order(); everything
// above order() is unknown, i.e. the series is  sum c_k t^k + O(t^{order+1}).

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

namespace tropcrit {

template<class K>
std::string scalar_to_string(const K& c, int digits = 17) {
    if constexpr (is_exact_scalar_v<K>) {
        return c.get_str();
    } else {
        std::ostringstream os;
        os << std::setprecision(digits);
        if (c.imag() == 0) {
            os << static_cast<long double>(c.real());
        } else {
            os << "(" << static_cast<long double>(c.real()) << (c.imag() < 0 ? "-" : "+")
               << static_cast<long double>(std::abs(c.imag())) << "i)";
        }
        return os.str();
    }
}

template<class K>
class LaurentSeries {
public:
    static constexpr bool exact = is_exact_scalar_v<K>;

    LaurentSeries() = default;

    LaurentSeries(int start, std::vector<K> coeffs, int order)
      : start_(start)
      , order_(order)
      , c_(std::move(coeffs)) {
        c_.resize(static_cast<std::size_t>(std::max(0, order_ - start_ + 1)), K(0));
    }

    static LaurentSeries zero(int order) { return LaurentSeries(order + 1, {}, order); }

    static LaurentSeries monomial(const K& c, int k, int order) {
        if (k > order) return zero(order);
        return LaurentSeries(k, {c}, order);
    }

    static LaurentSeries constant(const K& c, int order) { return monomial(c, 0, order); }

    // A polynomial in t, exact through `order`.
    static LaurentSeries from_polynomial(const std::vector<K>& coeffs, int order) {
        std::vector<K> c(coeffs.begin(), coeffs.begin() + std::min<std::ptrdiff_t>(coeffs.size(), order + 1));
        return LaurentSeries(0, std::move(c), order);
    }

    int start() const { return start_; }
    int order() const { return order_; }

    K coefficient(int k) const {
        if (k > order_) throw PreconditionError("coefficient of t^" + std::to_string(k) + " beyond truncation order");
        if (k < start_) return K(0);
        return c_[static_cast<std::size_t>(k - start_)];
    }

    // First exponent whose coefficient is nonzero (for floating K: exceeds
    // rel_tol times the largest magnitude); order()+1 for the zero series.
    int valuation(double rel_tol = 0) const {
        double scale = 0;
        for (const auto& x : c_) scale = std::max(scale, magnitude(x));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            double m = magnitude(c_[i]);
            if (m > 0 && m > rel_tol * scale) return start_ + static_cast<int>(i);
        }
        return order_ + 1;
    }

    // Valuation with an absolute threshold.
    int valuation_abs(double abs_tol) const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (magnitude(c_[i]) > abs_tol) return start_ + static_cast<int>(i);
        return order_ + 1;
    }

    bool is_zero(double rel_tol = 0) const { return valuation(rel_tol) > order_; }

    K leading_coefficient(double rel_tol = 0) const {
        int v = valuation(rel_tol);
        return v > order_ ? K(0) : coefficient(v);
    }

    LaurentSeries truncated(int order) const {
        order = std::min(order, order_);
        std::vector<K> c;
        for (int k = start_; k <= order; ++k) c.push_back(coefficient(k));
        return LaurentSeries(start_, std::move(c), order);
    }

    // Drops leading zero coefficients (exactly zero, or below rel_tol).
    LaurentSeries normalized(double rel_tol = 0) const {
        int v = valuation(rel_tol);
        std::vector<K> c;
        for (int k = v; k <= order_; ++k) c.push_back(coefficient(k));
        return LaurentSeries(v, std::move(c), order_);
    }

    LaurentSeries operator-() const {
        LaurentSeries r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        int order = std::min(a.order_, b.order_);
        int start = std::min(a.start_, b.start_);
        if (start > order) return zero(order);
        std::vector<K> c(static_cast<std::size_t>(order - start + 1), K(0));
        for (int k = std::max(a.start_, start); k <= order; ++k) c[k - start] += a.coefficient(k);
        for (int k = std::max(b.start_, start); k <= order; ++k) c[k - start] += b.coefficient(k);
        return LaurentSeries(start, std::move(c), order);
    }

    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

    friend LaurentSeries operator*(const LaurentSeries& a, const K& s) {
        LaurentSeries r = a;
        for (auto& x : r.c_) x *= s;
        return r;
    }

    friend LaurentSeries operator*(const K& s, const LaurentSeries& a) { return a * s; }

    // Known through min(a.order + val(b), b.order + val(a)); uses the stored
    // starts as valuations, so normalize floating inputs first if needed.
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        LaurentSeries x = a.normalized(), y = b.normalized();
        if (x.start_ > x.order_ || y.start_ > y.order_) {
            int o = std::min(x.order_ + std::min(y.start_, y.order_), y.order_ + std::min(x.start_, x.order_));
            return zero(o);
        }
        int order = std::min(x.order_ + y.start_, y.order_ + x.start_);
        int start = x.start_ + y.start_;
        if (start > order) return zero(order);
        std::vector<K> c(static_cast<std::size_t>(order - start + 1), K(0));
        for (int i = x.start_; i <= x.order_; ++i) {
            const K& xi = x.c_[i - x.start_];
            if (xi == K(0)) continue;
            for (int j = y.start_; j <= y.order_ && i + j <= order; ++j) c[i + j - start] += xi * y.c_[j - y.start_];
        }
        return LaurentSeries(start, std::move(c), order);
    }

    LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
    LaurentSeries& operator-=(const LaurentSeries& o) { return *this = *this - o; }
    LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

    // 1/a for a = t^v (c_v + ...), known through order - 2v.
    LaurentSeries inverse(double rel_tol = 0) const {
        LaurentSeries a = normalized(rel_tol);
        if (a.start_ > a.order_) throw PreconditionError("inversion of the zero series");
        const int v = a.start_;
        std::vector<K> u(static_cast<std::size_t>(a.order_ - v + 1));
        const K inv0 = K(1) / a.c_[0];
        for (int k = 0; k < static_cast<int>(u.size()); ++k) {
            K s = k == 0 ? K(1) : K(0);
            for (int j = 1; j <= k; ++j) s -= a.c_[j] * u[k - j];
            u[k] = s * inv0;
        }
        return LaurentSeries(-v, std::move(u), a.order_ - 2 * v);
    }

    LaurentSeries pow(int k) const {
        if (k < 0) return inverse().pow(-k);
        if (k == 0) return constant(K(1), order_);
        std::optional<LaurentSeries> r;
        LaurentSeries b = *this;
        while (k > 0) {
            if (k & 1) r = r ? *r * b : b;
            k >>= 1;
            if (k) b *= b;
        }
        return *r;
    }

    // t^k * this.
    LaurentSeries shifted(int k) const { return LaurentSeries(start_ + k, c_, order_ + k); }

    std::string to_string(const std::string& var = "t", int digits = 17) const {
        std::string s;
        for (int k = start_; k <= order_; ++k) {
            const K& x = c_[k - start_];
            if (x == K(0)) continue;
            std::string c = scalar_to_string(x, digits);
            if (!s.empty()) s += " + ";
            if (k == 0) {
                s += c;
            } else {
                s += c + "*" + var + (k == 1 ? "" : "^" + std::to_string(k));
            }
        }
        if (!s.empty()) s += " + ";
        return s + "O(" + var + "^" + std::to_string(order_ + 1) + ")";
    }

    // Componentwise conversion (e.g. exact -> floating).
    template<class L>
    LaurentSeries<L> cast() const {
        std::vector<L> c;
        for (const auto& x : c_) {
            if constexpr (is_exact_scalar_v<K>) {
                c.push_back(rational_to<L>(x));
            } else {
                c.push_back(L(x));
            }
        }
        return LaurentSeries<L>(start_, std::move(c), order_);
    }

    // Coefficient-wise absolute values as a real-valued majorant, used to
    // scale floating residual tolerances.
    LaurentSeries majorant() const {
        LaurentSeries r = *this;
        for (auto& x : r.c_) x = K(magnitude(x));
        return r;
    }

    const std::vector<K>& raw() const { return c_; }

private:
    int start_ = 1;
    int order_ = 0;
    std::vector<K> c_;
};

// f(series...) for a (Laurent) polynomial f; every series must share the
// same truncation behaviour. Powers are cached per variable.
template<class K>
LaurentSeries<K> evaluate_series(const Polynomial& f, const std::vector<LaurentSeries<K>>& x, int order) {
    LaurentSeries<K> acc = LaurentSeries<K>::zero(order);
    std::vector<std::map<int, LaurentSeries<K>>> cache(f.nvars());
    for (const auto& [m, c] : f.terms()) {
        LaurentSeries<K> term = LaurentSeries<K>::constant(rational_to<K>(c), order);
        for (std::size_t i = 0; i < f.nvars(); ++i) {
            if (m[i] == 0) continue;
            auto it = cache[i].find(m[i]);
            if (it == cache[i].end()) it = cache[i].emplace(m[i], x[i].pow(m[i])).first;
            term *= it->second;
        }
        acc += term;
    }
    return acc.truncated(order);
}

// Same with every coefficient of f and every series replaced by its
// absolute value: a coefficientwise bound for the terms that cancel in f.
template<class K>
LaurentSeries<K> evaluate_majorant(const Polynomial& f, const std::vector<LaurentSeries<K>>& x, int order) {
    std::vector<LaurentSeries<K>> ax;
    for (const auto& s : x) ax.push_back(s.majorant());
    Polynomial af(f.nvars());
    for (const auto& [m, c] : f.terms()) af.add_term(m, abs(c));
    return evaluate_series(af, ax, order);
}

} // namespace tropcrit

#endif
