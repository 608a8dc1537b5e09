#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "tropcrit/arrangement.hpp"
#include "tropcrit/groebner.hpp"
#include "tropcrit/polynomial.hpp"

namespace testing_helpers {

using namespace tropcrit;

inline Ideal ideal(const std::vector<std::string>& vars, const std::vector<std::string>& gens) {
    return Ideal::parse(vars, gens);
}

inline Ideal coin_ideal() { return ideal({"t0", "t1", "t2"}, {"t0*t2-t0*t1-t1^2", "t0+t1+t2-1"}); }

inline Ideal ex312_ideal() { return ideal({"t1", "t2", "t3", "t4"}, {"t1-t4-1", "t1-t2-t3"}); }

inline Ideal conic_ideal() { return ideal({"t1", "t2", "t3"}, {"t3-t1-t2-t1^2-t1*t2-t2^2"}); }

inline Arrangement make_arrangement(std::vector<std::string> vars, const std::vector<IntVector>& rows,
                                    bool closure = false) {
    Arrangement a;
    a.variables = std::move(vars);
    for (const auto& r : rows) a.rows.push_back(to_rational(r));
    a.projective_closure = closure;
    return a;
}

// xy(x-y)(x-1)
inline Arrangement hpa_arrangement(bool closure = false) {
    return make_arrangement({"x", "y"}, {{1, 0, 0}, {0, 1, 0}, {1, -1, 0}, {1, 0, -1}}, closure);
}

inline std::set<IntVector> to_set(const std::vector<IntVector>& v) { return {v.begin(), v.end()}; }

// Random polynomial with small integer coefficients and exponents.
inline Polynomial random_poly(std::mt19937_64& rng, std::size_t nvars, int max_terms = 4, int max_exp = 2) {
    std::uniform_int_distribution<int> nterms(1, max_terms), ex(0, max_exp), co(-5, 5);
    Polynomial p(nvars);
    int n = nterms(rng);
    for (int k = 0; k < n; ++k) {
        Monomial m(nvars);
        for (std::size_t i = 0; i < nvars; ++i) m[i] = ex(rng);
        p.add_term(m, make_rational(co(rng)));
    }
    return p;
}

inline Rational random_rational(std::mt19937_64& rng, int bound = 997) {
    std::uniform_int_distribution<int> num(-bound, bound), den(1, bound);
    return make_rational(num(rng), den(rng));
}

} // namespace testing_helpers
