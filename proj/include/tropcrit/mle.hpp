#ifndef TROPCRIT_MLE_HPP
#define TROPCRIT_MLE_HPP

// Exact critical points of ML-degree-one models and the closed-form
// estimator psi_i = c_i prod_tau g_tau^{(v_tau)_i}, g_tau = v_tau . s.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "critical.hpp"
#include "errors.hpp"
#include "groebner.hpp"
#include "random.hpp"
#include "tropical.hpp"
#include "variety.hpp"

namespace tropcrit {

// Names s_i for the data space, following the torus names t_i when they are
// of that form (so t0, t1, t2 pairs with s0, s1, s2).
inline std::vector<std::string> data_names(const VarietySpec& spec) {
    auto tn = spec.torus_names();
    std::vector<std::string> out;
    for (const auto& n : tn) {
        bool numbered = n.size() > 1 && n[0] == 't' && n.find_first_not_of("0123456789", 1) == std::string::npos;
        if (!numbered) return slope_names(tn.size());
        out.push_back("s" + n.substr(1));
    }
    return out;
}

// The unique critical point at alpha in torus coordinates (f_1, ..., f_p),
// when the critical system has exactly one solution.
inline std::optional<RationalVector> unique_critical_point(const VarietySpec& spec, const RationalVector& alpha,
                                                           const GroebnerOptions& opt = {},
                                                           Formulation f = Formulation::automatic) {
    auto sys = critical_system(spec, alpha, f, opt);
    Ideal r = sys.rabinowitsch();
    auto gb = groebner_basis(r, MonomialOrder::grlex(), opt);
    if (gb.is_unit() || standard_monomials(gb).size() != 1) return std::nullopt;
    RationalVector point;
    for (std::size_t i = 0; i < sys.ring.size(); ++i) {
        Polynomial nf = normal_form(Polynomial::variable(r.nvars(), i), gb, opt);
        if (!nf.is_constant()) return std::nullopt;
        point.push_back(nf.constant_term());
    }
    RationalVector coords;
    for (const auto& f : sys.coordinates) coords.push_back(f.evaluate(point));
    return coords;
}

struct MLEFactor {
    IntVector normal;  // sign-normalized linear form g
    long long exponent = 0;
};

struct MLECoordinate {
    Rational constant;
    std::vector<MLEFactor> factors;  // nonzero exponents only
};

struct MLEFormula {
    std::vector<std::string> coordinate_names;
    std::vector<std::string> data_names;
    std::vector<MLECoordinate> coordinates;
    std::vector<IntVector> rays;
    RationalVector sample;  // data vector used to fix the constants
    std::size_t verified_samples = 0;

    RationalVector evaluate(const RationalVector& alpha) const {
        RationalVector out;
        for (const auto& c : coordinates) {
            Rational v = c.constant;
            for (const auto& f : c.factors) {
                Rational g = dot(f.normal, alpha);
                if (g == 0) throw PreconditionError("data vector lies on a slope hyperplane");
                Rational pw = 1;
                for (long long k = 0; k < std::llabs(f.exponent); ++k) pw *= g;
                v = f.exponent > 0 ? Rational(v * pw) : Rational(v / pw);
            }
            out.push_back(v);
        }
        return out;
    }

    std::string form_string(const IntVector& normal) const {
        Polynomial p(data_names.size());
        for (std::size_t i = 0; i < normal.size(); ++i)
            p += Polynomial::variable(data_names.size(), i) * make_rational(normal[i]);
        return to_string(p, Ring(data_names));
    }

    // e.g. "s2*(s1+s2+s3)/((s2+s3)*(s1+s2+s3+s4))"
    std::string pretty(std::size_t i) const {
        const auto& c = coordinates.at(i);
        auto power = [&](const MLEFactor& f) {
            std::string g = form_string(f.normal);
            bool single = g.find_first_of("+-", 1) == std::string::npos && g[0] != '-';
            std::string base = single ? g : "(" + g + ")";
            long long k = std::llabs(f.exponent);
            return k == 1 ? base : base + "^" + std::to_string(k);
        };
        std::vector<std::string> num, den;
        for (const auto& f : c.factors) (f.exponent > 0 ? num : den).push_back(power(f));
        auto join = [](const std::vector<std::string>& v) {
            std::string s;
            for (const auto& x : v) s += (s.empty() ? "" : "*") + x;
            return s;
        };
        std::string n = join(num);
        Rational k = c.constant;
        std::string prefix;
        if (k == -1) prefix = "-";
        else if (k != 1) prefix = to_string(k) + (n.empty() ? "" : "*");
        if (n.empty() && (k == 1 || k == -1)) n = "1";
        std::string s = prefix + n;
        if (!den.empty()) s += "/" + (den.size() == 1 ? den[0] : "(" + join(den) + ")");
        return s;
    }
};

namespace detail {

inline RationalVector generic_sample(Sampler& rng, std::size_t p, const std::vector<IntVector>& normals) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        RationalVector a = rng.vector(p);
        if (!on_some_hyperplane(a, normals)) return a;
    }
    throw DegenerateSample("no data vector off the slope hyperplanes");
}

} // namespace detail

// Closed-form estimator of an ML-degree-one model from its rigid rays.
// Constants are fixed at one data vector and checked at `checks` more.
inline MLEFormula mle_closed_form(const VarietySpec& spec, const std::vector<Ray>& rays, Sampler& rng,
                                  std::size_t checks = 20, const GroebnerOptions& opt = {}) {
    const std::size_t p = spec.ambient_dim();
    std::vector<IntVector> vs, normals;
    for (const auto& r : rays) {
        if (!r.rigid) continue;
        if (r.v.size() != p) throw ValidationError("ray " + to_string(r.v) + " has wrong dimension");
        vs.push_back(r.v);
        normals.push_back(sign_normalized(r.v));
    }
    auto ml = ml_degree(spec, rng, Formulation::automatic, normals, opt);
    if (ml.degree != 1) throw PreconditionError("ML degree is " + std::to_string(ml.degree) + ", not 1");
    IntVector total(p, 0);
    for (const auto& v : vs)
        for (std::size_t i = 0; i < p; ++i) total[i] += v[i];
    if (!is_zero(total))
        throw PreconditionError("rigid rays sum to " + to_string(total) + " instead of 0; the ray list is incomplete");

    MLEFormula out;
    out.coordinate_names = spec.torus_names();
    out.data_names = data_names(spec);
    out.rays = vs;
    out.coordinates.resize(p);
    for (std::size_t i = 0; i < p; ++i) {
        out.coordinates[i].constant = 1;
        for (std::size_t k = 0; k < vs.size(); ++k) {
            long long e = vs[k][i];
            if (e != 0) out.coordinates[i].factors.push_back(MLEFactor{normals[k], e});
        }
    }
    // Merge factors that share a linear form.
    for (auto& c : out.coordinates) {
        std::vector<MLEFactor> merged;
        for (const auto& f : c.factors) {
            auto it = std::find_if(merged.begin(), merged.end(), [&](const MLEFactor& m) { return m.normal == f.normal; });
            if (it == merged.end()) merged.push_back(f);
            else it->exponent += f.exponent;
        }
        std::erase_if(merged, [](const MLEFactor& f) { return f.exponent == 0; });
        // Canonical order, independent of the ray order: smaller support first,
        // then larger normal.
        std::sort(merged.begin(), merged.end(), [](const MLEFactor& a, const MLEFactor& b) {
            auto support = [](const IntVector& v) { return std::count_if(v.begin(), v.end(), [](long long x) { return x != 0; }); };
            auto sa = support(a.normal), sb = support(b.normal);
            return sa != sb ? sa < sb : a.normal > b.normal;
        });
        c.factors = std::move(merged);
    }

    auto fix = unique_critical_point(spec, ml.alpha, opt);
    if (!fix) throw NumericalError("critical point at the sample data vector is not rational");
    RationalVector shape = out.evaluate(ml.alpha);
    for (std::size_t i = 0; i < p; ++i) out.coordinates[i].constant *= (*fix)[i] / shape[i];
    out.sample = ml.alpha;

    Ideal X = torus_ideal(spec, opt);
    for (std::size_t k = 0; k < checks; ++k) {
        RationalVector a = detail::generic_sample(rng, p, normals);
        RationalVector psi = out.evaluate(a);
        auto exact = unique_critical_point(spec, a, opt);
        bool ok = exact && *exact == psi;
        for (const auto& g : X.generators)
            if (ok && g.evaluate(psi) != 0) ok = false;
        if (!ok) throw NumericalError("closed-form estimator failed verification at a random data vector");
        ++out.verified_samples;
    }
    return out;
}

} // namespace tropcrit

#endif
