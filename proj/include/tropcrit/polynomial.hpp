#ifndef TROPCRIT_POLYNOMIAL_HPP
#define TROPCRIT_POLYNOMIAL_HPP

// Sparse multivariate (Laurent) polynomials over the rationals.
//
// A Polynomial only knows its number of variables; names live in a Ring and
// are needed only for parsing and printing.

#include <algorithm>
#include <cctype>
#include <compare>
#include <type_traits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace tropcrit {

struct Monomial {
    std::vector<int> e;

    Monomial() = default;
    explicit Monomial(std::size_t n) : e(n, 0) {}
    explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}

    std::size_t size() const { return e.size(); }
    int operator[](std::size_t i) const { return e[i]; }
    int& operator[](std::size_t i) { return e[i]; }

    long degree() const {
        long d = 0;
        for (int x : e) d += x;
        return d;
    }

    bool is_one() const {
        return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    }

    // Componentwise a <= b (a divides b for nonnegative exponents).
    bool divides(const Monomial& b) const {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > b.e[i]) return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.e[i] = a.e[i] + b.e[i];
        return r;
    }

    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.e[i] = a.e[i] - b.e[i];
        return r;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
        return r;
    }

    friend bool coprime(const Monomial& a, const Monomial& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a.e[i] > 0 && b.e[i] > 0) return false;
        return true;
    }

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

inline long long weight(const IntVector& w, const Monomial& m) {
    long long s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += w[i] * m.e[i];
    return s;
}

// Ordered list of variable names.
class Ring {
public:
    Ring() = default;
    explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {}

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    std::ptrdiff_t index_of(const std::string& n) const {
        auto it = std::find(names_.begin(), names_.end(), n);
        return it == names_.end() ? -1 : it - names_.begin();
    }

    Ring extended(const std::vector<std::string>& more) const {
        auto n = names_;
        n.insert(n.end(), more.begin(), more.end());
        return Ring(std::move(n));
    }

    friend bool operator==(const Ring&, const Ring&) = default;

private:
    std::vector<std::string> names_;
};

class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Rational& c) {
        Polynomial p(nvars);
        if (c != 0) p.terms_.emplace(Monomial(nvars), c);
        return p;
    }

    static Polynomial variable(std::size_t nvars, std::size_t i) {
        Monomial m(nvars);
        m[i] = 1;
        return term(m, 1);
    }

    static Polynomial term(const Monomial& m, const Rational& c) {
        Polynomial p(m.size());
        if (c != 0) p.terms_.emplace(m, c);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

    Rational constant_term() const {
        auto it = terms_.find(Monomial(nvars_));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    long total_degree() const {
        long d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    int degree_in(std::size_t i) const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m[i]);
        return d;
    }

    bool is_laurent() const {
        for (const auto& [m, c] : terms_)
            for (int x : m.e)
                if (x < 0) return true;
        return false;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    Polynomial& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

    friend Polynomial operator-(Polynomial a) {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r(std::max(a.nvars_, b.nvars_));
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial multiply_monomial(const Monomial& m, const Rational& c = 1) const {
        Polynomial r(nvars_);
        if (c == 0) return r;
        for (const auto& [mm, cc] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, cc * c);
        return r;
    }

    // Nonnegative exponent; a negative one is allowed only for a single term.
    Polynomial pow(int k) const {
        if (k < 0) {
            if (terms_.size() != 1)
                throw ValidationError("negative power of a non-monomial");
            const auto& [m, c] = *terms_.begin();
            Monomial inv(nvars_);
            for (std::size_t i = 0; i < nvars_; ++i) inv[i] = -m[i] * (-k);
            Rational ci = 1;
            for (int j = 0; j < -k; ++j) ci /= c;
            return term(inv, ci);
        }
        Polynomial result = constant(nvars_, 1);
        Polynomial base = *this;
        while (k > 0) {
            if (k & 1) result *= base;
            k >>= 1;
            if (k) base *= base;
        }
        return result;
    }

    Polynomial derivative(std::size_t i) const {
        Polynomial r(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m[i] == 0) continue;
            Monomial d = m;
            d[i] -= 1;
            r.add_term(d, c * m[i]);
        }
        return r;
    }

    // x_i * d/dx_i, the toric derivative; keeps Laurent monomials Laurent.
    Polynomial toric_derivative(std::size_t i) const {
        Polynomial r(nvars_);
        for (const auto& [m, c] : terms_)
            if (m[i] != 0) r.terms_.emplace_hint(r.terms_.end(), m, c * m[i]);
        return r;
    }

    template<class Scalar>
    Scalar evaluate(const std::vector<Scalar>& point) const {
        Scalar s = Scalar(0);
        for (const auto& [m, c] : terms_) {
            Scalar t = rational_to<Scalar>(c);
            for (std::size_t i = 0; i < nvars_; ++i) {
                int k = m[i];
                if (k >= 0) {
                    for (int j = 0; j < k; ++j) t *= point[i];
                } else {
                    for (int j = 0; j < -k; ++j) t /= point[i];
                }
            }
            s += t;
        }
        return s;
    }

    Rational evaluate(const RationalVector& point) const { return evaluate<Rational>(point); }

    // Substitutes x_i -> images[i]; images live in a ring with `target_nvars` variables.
    Polynomial substitute(const std::vector<Polynomial>& images, std::size_t target_nvars) const {
        Polynomial r(target_nvars);
        std::vector<std::map<int, Polynomial>> cache(nvars_);
        for (const auto& [m, c] : terms_) {
            Polynomial t = constant(target_nvars, c);
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (m[i] == 0) continue;
                auto it = cache[i].find(m[i]);
                if (it == cache[i].end()) it = cache[i].emplace(m[i], images[i].pow(m[i])).first;
                t *= it->second;
            }
            r += t;
        }
        return r;
    }

    // Re-embeds into a ring of `target_nvars` variables; variable i goes to position map[i].
    Polynomial remap(const std::vector<std::size_t>& map, std::size_t target_nvars) const {
        Polynomial r(target_nvars);
        for (const auto& [m, c] : terms_) {
            Monomial mm(target_nvars);
            for (std::size_t i = 0; i < nvars_; ++i) mm[map[i]] += m[i];
            r.add_term(mm, c);
        }
        return r;
    }

    // Applies an integer linear map to every exponent vector: e -> A e.
    Polynomial transform_exponents(const std::vector<IntVector>& rows) const {
        Polynomial r(rows.size());
        for (const auto& [m, c] : terms_) {
            Monomial mm(rows.size());
            for (std::size_t i = 0; i < rows.size(); ++i) {
                long long s = 0;
                for (std::size_t j = 0; j < nvars_; ++j) s += rows[i][j] * m[j];
                mm[i] = static_cast<int>(s);
            }
            r.add_term(mm, c);
        }
        return r;
    }

    // Multiplies by the monomial that makes every exponent nonnegative and
    // minimal; returns the shift that was applied.
    Monomial clear_laurent() {
        Monomial shift(nvars_);
        if (terms_.empty()) return shift;
        for (std::size_t i = 0; i < nvars_; ++i) {
            int lo = terms_.begin()->first[i];
            for (const auto& [m, c] : terms_) lo = std::min(lo, m[i]);
            shift[i] = -lo;
        }
        if (!shift.is_one()) *this = multiply_monomial(shift);
        return shift;
    }

    Polynomial cleared() const {
        Polynomial p = *this;
        p.clear_laurent();
        return p;
    }

    // Scales so that the coefficients are coprime integers with positive
    // leading (lexicographically largest) coefficient.
    Polynomial primitive_part() const {
        if (terms_.empty()) return *this;
        Integer den = 1, num = 0;
        for (const auto& [m, c] : terms_) {
            den = lcm(den, Integer(c.get_den()));
            num = gcd(num, Integer(c.get_num()));
        }
        Rational s(den, num);
        if (terms_.rbegin()->second < 0) s = -s;
        return *this * s;
    }

    Polynomial monic_lex() const {
        if (terms_.empty()) return *this;
        return *this * (Rational(1) / terms_.rbegin()->second);
    }

    // Terms of minimal w-weight.
    Polynomial initial_form(const IntVector& w) const {
        Polynomial r(nvars_);
        if (terms_.empty()) return r;
        long long lo = weight(w, terms_.begin()->first);
        for (const auto& [m, c] : terms_) lo = std::min(lo, weight(w, m));
        for (const auto& [m, c] : terms_)
            if (weight(w, m) == lo) r.terms_.emplace_hint(r.terms_.end(), m, c);
        return r;
    }

    long long min_weight(const IntVector& w) const {
        long long lo = 0;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            long long x = weight(w, m);
            if (first || x < lo) lo = x;
            first = false;
        }
        return lo;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

private:
    std::size_t nvars_ = 0;
    TermMap terms_;
};

// ----------------------------------------------------------------------------
// Printing
// ----------------------------------------------------------------------------

// Degree-then-lexicographic comparison; true if a is strictly larger.
inline bool grlex_greater(const Monomial& a, const Monomial& b) {
    long da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    return a.e > b.e;
}

inline std::string monomial_to_string(const Monomial& m, const Ring& ring) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += ring.name(i);
        if (m[i] != 1) s += "^" + std::to_string(m[i]);
    }
    return s;
}

inline std::string to_string(const Polynomial& p, const Ring& ring) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return grlex_greater(a.first, b.first); });
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms) {
        Rational a = abs(c);
        bool neg = c < 0;
        if (first) {
            if (neg) s += "-";
        } else {
            s += neg ? "-" : "+";
        }
        first = false;
        std::string mono = monomial_to_string(m, ring);
        if (mono.empty()) {
            s += a.get_str();
        } else if (a == 1) {
            s += mono;
        } else if (is_integer(a)) {
            s += a.get_str() + "*" + mono;
        } else {
            s += a.get_num().get_str() + "/" + a.get_den().get_str() + "*" + mono;
        }
    }
    return s;
}

// a / b when b divides a exactly (as ordinary polynomials), else nullopt.
inline std::optional<Polynomial> divide_exact(Polynomial a, const Polynomial& b) {
    if (b.is_zero()) throw ValidationError("division by the zero polynomial");
    auto lead = [](const Polynomial& p) {
        auto best = p.terms().begin();
        for (auto it = p.terms().begin(); it != p.terms().end(); ++it)
            if (grlex_greater(it->first, best->first)) best = it;
        return *best;
    };
    const auto [lb, cb] = lead(b);
    Polynomial q(a.nvars());
    while (!a.is_zero()) {
        const auto [la, ca] = lead(a);
        if (!lb.divides(la)) return std::nullopt;
        Monomial m = la / lb;
        Rational c = ca / cb;
        q.add_term(m, c);
        a -= b.multiply_monomial(m, c);
    }
    return q;
}

// ----------------------------------------------------------------------------
// Parsing
//
//   expr    := ['+'|'-'] term { ('+'|'-') term }
//   term    := factor { ('*'|'/') factor }
//   factor  := primary [ '^' ['-'] integer ]
//   primary := integer | name | '(' expr ')' | ('+'|'-') factor
//
// Division is only allowed by nonzero constants; negative powers only of
// single terms (Laurent monomials).
// ----------------------------------------------------------------------------

namespace detail {

class PolyParser {
public:
    PolyParser(const std::string& text, const Ring& ring) : s_(text), ring_(ring) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ValidationError("polynomial syntax error at position " + std::to_string(pos_) + ": " + msg + " in \"" + s_ +
                              "\"");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial acc(ring_.size());
        bool first = true;
        while (true) {
            skip_ws();
            bool neg = false;
            if (accept('+')) {
            } else if (accept('-')) {
                neg = true;
            } else if (!first) {
                break;
            }
            Polynomial t = term();
            if (neg) t = -t;
            acc += t;
            first = false;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (true) {
            if (accept('*')) {
                acc *= factor();
            } else if (accept('/')) {
                std::size_t at = pos_;
                Polynomial d = factor();
                if (!d.is_constant() || d.is_zero()) {
                    pos_ = at;
                    fail("division by a non-constant or zero");
                }
                acc *= Rational(1) / d.constant_term();
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial factor() {
        Polynomial base = primary();
        if (accept('^')) {
            skip_ws();
            bool neg = accept('-');
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected integer exponent");
            long k = std::stol(s_.substr(start, pos_ - start));
            if (k > 10000) fail("exponent too large");
            if (neg && base.size() != 1) fail("negative exponent of a non-monomial");
            base = base.pow(neg ? -static_cast<int>(k) : static_cast<int>(k));
        }
        return base;
    }

    Polynomial primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (c == '-' || c == '+') {
            ++pos_;
            Polynomial p = factor();
            return c == '-' ? -p : p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Polynomial::constant(ring_.size(), Rational(Integer(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            auto idx = ring_.index_of(name);
            if (idx < 0) {
                pos_ = start;
                fail("undeclared variable '" + name + "'");
            }
            return Polynomial::variable(ring_.size(), static_cast<std::size_t>(idx));
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    const Ring& ring_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Polynomial poly_parse(const std::string& text, const Ring& ring) { return detail::PolyParser(text, ring).parse(); }

inline Polynomial poly_parse(const std::string& text, const std::vector<std::string>& vars) {
    return poly_parse(text, Ring(vars));
}

} // namespace tropcrit

#endif
