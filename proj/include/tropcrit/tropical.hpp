#ifndef TROPCRIT_TROPICAL_HPP
#define TROPCRIT_TROPICAL_HPP

// Tropical membership and rigidity of weight vectors, bounded rigid-ray
// search, boundary strata and their Euler characteristics, and the critical
// slope hyperplanes they induce.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "critical.hpp"
#include "errors.hpp"
#include "groebner.hpp"
#include "linalg.hpp"
#include "random.hpp"
#include "variety.hpp"

namespace tropcrit {

enum class RaySource { searched, flacet, user };

inline std::string to_string(RaySource s) {
    switch (s) {
    case RaySource::searched: return "searched";
    case RaySource::flacet: return "flacet";
    case RaySource::user: return "user";
    }
    return "?";
}

struct Ray {
    IntVector v;
    bool rigid = false;
    RaySource source = RaySource::searched;

    static Ray make(IntVector v, bool rigid = false, RaySource source = RaySource::user) {
        if (is_zero(v)) throw ValidationError("ray vector must be nonzero");
        return Ray{primitive(std::move(v)), rigid, source};
    }
};

// Hyperplane {normal . s = offset}; projective slopes have offset 0 and a
// sign-normalized normal (first nonzero entry positive).
struct SlopeHyperplane {
    IntVector normal;
    Rational offset = 0;

    static SlopeHyperplane projective(const IntVector& v) { return SlopeHyperplane{sign_normalized(primitive(v)), 0}; }

    bool contains(const RationalVector& s) const { return dot(normal, s) == offset; }
    friend bool operator==(const SlopeHyperplane&, const SlopeHyperplane&) = default;
};

inline std::string to_string(const SlopeHyperplane& h, const std::vector<std::string>& names) {
    Ring r(names);
    Polynomial p(names.size());
    for (std::size_t i = 0; i < h.normal.size(); ++i) p += Polynomial::variable(names.size(), i) * make_rational(h.normal[i]);
    std::string s = to_string(p, r);
    return h.offset == 0 ? s : s + " = " + to_string(h.offset);
}

inline std::vector<std::string> slope_names(std::size_t p, const std::string& prefix = "s", bool zero_based = false) {
    std::vector<std::string> n;
    for (std::size_t i = 0; i < p; ++i) n.push_back(prefix + std::to_string(zero_based ? i : i + 1));
    return n;
}

// Initial ideals of one ideal at many weights share the homogenization.
class TropicalContext {
public:
    explicit TropicalContext(Ideal I, GroebnerOptions opt = {})
        : ideal_(laurent_normalized(I)), opt_(opt), homog_(homogenized_ideal(ideal_, opt)) {}

    const Ideal& ideal() const { return ideal_; }
    const GroebnerOptions& options() const { return opt_; }
    std::size_t dim() const { return ideal_.nvars(); }

    // init_w(I) saturated by the product of the coordinates.
    Ideal torus_initial_ideal(const IntVector& w) const {
        if (w.size() != dim()) throw ValidationError("weight " + to_string(w) + " has wrong dimension");
        Ideal init = is_zero(w) ? ideal_ : initial_ideal_from_homogenized(homog_, w, opt_);
        return saturate_torus(init, opt_);
    }

    bool contains(const IntVector& w) const { return !is_unit_ideal(torus_initial_ideal(w), opt_); }

    // Rigid iff the homogeneity space of the initial ideal is the line through w.
    bool rigid(const IntVector& w) const {
        Ideal init = torus_initial_ideal(w);
        if (is_unit_ideal(init, opt_)) throw PreconditionError("weight " + to_string(w) + " is not in the tropical variety");
        return homogeneity_space(init, opt_).dimension() == 1;
    }

private:
    Ideal ideal_;
    GroebnerOptions opt_;
    Ideal homog_;
};

inline bool trop_contains(const Ideal& I, const IntVector& w, const GroebnerOptions& opt = {}) {
    return TropicalContext(I, opt).contains(w);
}

inline bool is_rigid(const Ideal& I, const IntVector& w, const GroebnerOptions& opt = {}) {
    return TropicalContext(I, opt).rigid(w);
}

// Every primitive w with entries in [-bound, bound] that lies in Trop and is
// rigid. Exhaustive within the box only.
inline std::vector<Ray> find_rigid_rays(const Ideal& I, int bound = 3, const GroebnerOptions& opt = {}) {
    if (bound < 1) throw ValidationError("ray search bound must be at least 1");
    const std::size_t p = I.nvars();
    std::vector<Ray> out;
    if (p == 0 || I.is_zero()) return out;
    TropicalContext ctx(I, opt);
    IntVector w(p, -bound);
    while (true) {
        if (!is_zero(w) && gcd_of(w) == 1) {
            Ideal init = ctx.torus_initial_ideal(w);
            if (!is_unit_ideal(init, opt) && homogeneity_space(init, opt).dimension() == 1)
                out.push_back(Ray{w, true, RaySource::searched});
        }
        std::size_t i = 0;
        while (i < p && w[i] == bound) w[i++] = -bound;
        if (i == p) break;
        ++w[i];
    }
    return out;
}

// P(tau^perp) for every rigid ray, deduplicated up to sign.
inline std::vector<SlopeHyperplane> critical_slopes(const std::vector<Ray>& rays) {
    std::vector<SlopeHyperplane> out;
    for (const auto& r : rays) {
        if (!r.rigid) continue;
        auto h = SlopeHyperplane::projective(r.v);
        if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(h);
    }
    return out;
}

struct StratumModel {
    Ideal ideal;          // in p - 1 torus coordinates
    IntMatrix transform;  // unimodular U with U v = e_1
};

// The stratum of the boundary orbit for v: init_v(I) rewritten in monomial
// coordinates where v becomes e_1, with the first coordinate set to 1.
inline StratumModel stratum_model(const TropicalContext& ctx, const IntVector& v,
                                  const std::optional<IntMatrix>& custom = std::nullopt) {
    const std::size_t p = ctx.dim();
    IntVector pv = primitive(v);
    Ideal init = ctx.torus_initial_ideal(pv);
    if (is_unit_ideal(init, ctx.options()))
        throw PreconditionError("ray " + to_string(pv) + " is not in the tropical variety");
    IntMatrix u = custom ? *custom : unimodular_to_e1(pv);
    IntVector e1(p, 0);
    e1[0] = 1;
    if (u.size() != p || std::llabs(determinant(u)) != 1 || mat_vec(u, pv) != e1)
        throw ValidationError("transform is not unimodular with U v = e1");
    // Exponents transform contragrediently: e -> U^{-T} e, so v.e becomes the
    // first new exponent, constant on each generator of init.
    IntMatrix rows = transpose(integer_inverse(u));
    std::vector<std::string> names;
    for (std::size_t i = 1; i < p; ++i) names.push_back("y" + std::to_string(i));
    std::vector<Polynomial> gens;
    for (const auto& g : init.generators) {
        Polynomial h = g.transform_exponents(rows);
        Polynomial r(p - 1);
        for (const auto& [m, c] : h.terms()) {
            Monomial mm(p - 1);
            for (std::size_t i = 1; i < p; ++i) mm[i - 1] = m[i];
            r.add_term(mm, c);
        }
        if (!r.is_zero()) gens.push_back(r.cleared());
    }
    Ideal s(Ring(names), std::move(gens));
    return StratumModel{saturate_torus(s, ctx.options()), u};
}

inline StratumModel stratum_model(const Ideal& I, const Ray& ray, const GroebnerOptions& opt = {}) {
    return stratum_model(TropicalContext(I, opt), ray.v);
}

// Euler characteristic of a smooth very affine variety given by a saturated
// torus ideal: point count in dimension 0, (-1)^dim times the ML degree
// otherwise, and 0 for a whole torus of positive dimension.
inline long long euler_characteristic(const Ideal& S, Sampler& rng, const GroebnerOptions& opt = {}) {
    if (is_unit_ideal(S, opt)) return 0;
    int d = ideal_dimension(S, opt);
    if (d == 0) return static_cast<long long>(zero_dim_degree(S, opt));
    if (S.is_zero()) return 0;
    auto ml = ml_degree(VarietySpec::from_ideal(S), rng, Formulation::automatic, {}, opt);
    long long chi = static_cast<long long>(ml.degree);
    return d % 2 ? -chi : chi;
}

inline long long stratum_euler_char(const TropicalContext& ctx, const IntVector& v, Sampler& rng,
                                    const std::optional<IntMatrix>& custom = std::nullopt) {
    return euler_characteristic(stratum_model(ctx, v, custom).ideal, rng, ctx.options());
}

inline long long stratum_euler_char(const Ideal& I, const Ray& ray, Sampler& rng, const GroebnerOptions& opt = {}) {
    return stratum_euler_char(TropicalContext(I, opt), ray.v, rng);
}

// True iff v is rigid with a stratum of nonzero Euler characteristic, which
// certifies v as an escape direction over generic alpha on v^perp.
inline bool certify_escape_direction(const TropicalContext& ctx, const IntVector& v, const RationalVector& alpha,
                                     Sampler& rng) {
    if (alpha.size() != v.size()) throw ValidationError("data vector has wrong length");
    if (dot(v, alpha) != 0)
        throw ValidationError("data vector is not on the hyperplane orthogonal to " + to_string(v));
    if (!ctx.contains(v) || !ctx.rigid(v)) return false;
    return stratum_euler_char(ctx, v, rng) != 0;
}

inline bool certify_escape_direction(const Ideal& I, const Ray& ray, const RationalVector& alpha, Sampler& rng,
                                     const GroebnerOptions& opt = {}) {
    return certify_escape_direction(TropicalContext(I, opt), ray.v, alpha, rng);
}

// sum_tau chi(stratum) v_tau, reported for inspection.
inline IntVector weighted_ray_sum(const TropicalContext& ctx, const std::vector<Ray>& rays, Sampler& rng,
                                  std::vector<long long>* chis = nullptr) {
    IntVector s(ctx.dim(), 0);
    for (const auto& r : rays) {
        long long chi = stratum_euler_char(ctx, r.v, rng);
        if (chis) chis->push_back(chi);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += chi * r.v[i];
    }
    return s;
}

} // namespace tropcrit

#endif
