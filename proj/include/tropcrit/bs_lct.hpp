#ifndef TROPCRIT_BS_LCT_HPP
#define TROPCRIT_BS_LCT_HPP

// Critical slopes that are also Bernstein-Sato slopes (rigid rays in the
// nonnegative orthant), LCT polytopes over s >= 0 and their facet tests.
// Bernstein-Sato data itself is never computed; it is read from fixtures.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arrangement.hpp"
#include "critical.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "rational.hpp"
#include "tropical.hpp"
#include "variety.hpp"

namespace tropcrit {

inline bool nonnegative(const IntVector& v) {
    return std::all_of(v.begin(), v.end(), [](long long x) { return x >= 0; });
}

// Codimension-one components normal . s + offset = 0 of a Bernstein-Sato
// variety, as produced by an external system.
struct BSFactor {
    IntVector normal;
    RationalVector offsets;  // may be empty when only the slope is known
};

struct BSFixture {
    std::vector<BSFactor> factors;
    std::string source;

    std::vector<SlopeHyperplane> slopes() const {
        std::vector<SlopeHyperplane> out;
        for (const auto& f : factors) {
            SlopeHyperplane h{sign_normalized(f.normal), 0};
            if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(h);
        }
        return out;
    }

    bool has_translate(const IntVector& normal, const Rational& offset) const {
        IntVector n = primitive(normal);
        for (const auto& f : factors) {
            if (primitive(f.normal) != n) continue;
            // f.normal = c * n with c > 0; rescale the offset accordingly
            long long c = gcd_of(f.normal);
            for (const auto& o : f.offsets)
                if (o == offset * make_rational(c)) return true;
        }
        return false;
    }
};

struct BSReport {
    std::vector<SlopeHyperplane> bs_slope_hyperplanes;  // fixture slopes when given, else the intersection
    std::vector<SlopeHyperplane> intersection_with_SF;  // tau-perp for rigid rays tau >= 0
    std::vector<SlopeHyperplane> sf_only;               // critical slopes from rays outside the orthant
    std::vector<SlopeHyperplane> bs_only;               // fixture slopes that are not critical slopes
    bool has_fixture = false;
    bool consistent = true;  // fixture slopes contain every predicted component
};

namespace detail {

inline bool contains_slope(const std::vector<SlopeHyperplane>& hs, const SlopeHyperplane& h) {
    return std::find(hs.begin(), hs.end(), h) != hs.end();
}

inline void add_slope(std::vector<SlopeHyperplane>& hs, const SlopeHyperplane& h) {
    if (!contains_slope(hs, h)) hs.push_back(h);
}

} // namespace detail

inline BSReport bs_slope_intersection(const std::vector<Ray>& rays, const BSFixture* fixture = nullptr) {
    BSReport r;
    for (const auto& ray : rays) {
        if (!ray.rigid) continue;
        SlopeHyperplane h{sign_normalized(ray.v), 0};
        if (nonnegative(ray.v)) detail::add_slope(r.intersection_with_SF, h);
    }
    for (const auto& ray : rays) {
        if (!ray.rigid || nonnegative(ray.v)) continue;
        SlopeHyperplane h{sign_normalized(ray.v), 0};
        if (!detail::contains_slope(r.intersection_with_SF, h)) detail::add_slope(r.sf_only, h);
    }
    if (!fixture) {
        r.bs_slope_hyperplanes = r.intersection_with_SF;
        return r;
    }
    r.has_fixture = true;
    r.bs_slope_hyperplanes = fixture->slopes();
    for (const auto& h : r.bs_slope_hyperplanes)
        if (!detail::contains_slope(r.intersection_with_SF, h) && !detail::contains_slope(r.sf_only, h))
            r.bs_only.push_back(h);
    for (const auto& h : r.intersection_with_SF)
        if (!detail::contains_slope(r.bs_slope_hyperplanes, h)) r.consistent = false;
    for (const auto& h : r.sf_only)
        if (detail::contains_slope(r.bs_slope_hyperplanes, h)) r.consistent = false;
    return r;
}

// A branch with nonnegative valuations certifies that its line lies in BS_G.
inline bool qfa_nonneg_certificate(const IntVector& valuations) { return nonnegative(valuations); }

struct LCTInequality {
    IntVector a;  // a . s <= k
    Rational k;
    std::string provenance;  // "rank", "user", ...
};

struct LCTPolytope {
    std::size_t dimension = 0;
    std::vector<LCTInequality> inequalities;

    bool contains(const RationalVector& s) const {
        for (const auto& x : s)
            if (x < 0) return false;
        for (const auto& q : inequalities)
            if (dot(q.a, s) > q.k) return false;
        return true;
    }

    std::optional<std::size_t> index_of(const IntVector& a) const {
        for (std::size_t i = 0; i < inequalities.size(); ++i)
            if (inequalities[i].a == a) return i;
        return std::nullopt;
    }
};

using DiscrepancyMap = std::map<IntVector, Rational>;

// Inequalities v . s <= k_v for the given rays in the nonnegative orthant;
// rays with a negative entry are skipped.
inline LCTPolytope lct_polytope(std::size_t p, const std::vector<IntVector>& rays, const DiscrepancyMap& k,
                                const std::string& provenance = "user") {
    LCTPolytope P;
    P.dimension = p;
    for (const auto& v : rays) {
        if (v.size() != p) throw ValidationError("ray " + to_string(v) + " has wrong dimension");
        if (!nonnegative(v) || is_zero(v)) continue;
        auto it = k.find(v);
        if (it == k.end()) throw PreconditionError("missing discrepancy for ray " + to_string(v));
        if (it->second <= 0) throw ValidationError("discrepancy for ray " + to_string(v) + " must be positive");
        if (!P.index_of(v)) P.inequalities.push_back({v, it->second, provenance});
    }
    return P;
}

// Divisors of the wonderful model of an arrangement: dense edges F of the
// (coned) arrangement not at infinity, with a_F the incidence vector over the
// hyperplanes and k_F = rank F.
inline LCTPolytope arrangement_lct(const Arrangement& a) {
    Arrangement c = a;
    bool coned = !a.is_central() || a.projective_closure;
    if (coned) c.projective_closure = true;
    c = c.central();
    const std::size_t p = a.size();
    LCTPolytope P;
    P.dimension = p;
    for (const auto& f : dense_edges(c)) {
        if (coned && f.contains(c.size() - 1)) continue;
        IntVector v(p, 0);
        for (auto i : f.members) v[i] = 1;
        if (!P.index_of(v)) P.inequalities.push_back({v, Rational(static_cast<long>(f.rank)), "rank"});
    }
    return P;
}

namespace detail {

struct Halfspace {
    RationalVector a;
    Rational b;  // a . s <= b
};

inline std::vector<Halfspace> halfspaces(const LCTPolytope& P) {
    std::vector<Halfspace> h;
    for (const auto& q : P.inequalities) h.push_back({to_rational(q.a), q.k});
    for (std::size_t j = 0; j < P.dimension; ++j) {
        RationalVector e(P.dimension, Rational(0));
        e[j] = -1;
        h.push_back({e, Rational(0)});
    }
    return h;
}

inline std::vector<RationalVector> vertices(const LCTPolytope& P) {
    const std::size_t p = P.dimension;
    auto hs = halfspaces(P);
    std::vector<RationalVector> out;
    for (const auto& sel : combinations(hs.size(), p)) {
        RationalMatrix A;
        RationalVector b;
        for (auto i : sel) {
            A.push_back(hs[i].a);
            b.push_back(hs[i].b);
        }
        if (rank(A) < p) continue;
        RationalVector x = LinearSolver<Rational>(A).solve(b);
        bool feasible = std::all_of(hs.begin(), hs.end(), [&](const Halfspace& h) { return dot(h.a, x) <= h.b; });
        if (feasible && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
    return out;
}

} // namespace detail

// True iff {a_i . s = k_i} meets P in a face of dimension p - 1. The
// recession cone of P is spanned by the e_j with a_j = 0 in every inequality.
inline bool facet_defining(const LCTPolytope& P, std::size_t which) {
    const std::size_t p = P.dimension;
    if (p > 8) throw ResourceError("facet test limited to dimension 8");
    if (which >= P.inequalities.size()) throw ValidationError("no inequality with index " + std::to_string(which));
    const auto& q = P.inequalities[which];
    std::vector<RationalVector> on;
    for (const auto& x : detail::vertices(P))
        if (dot(q.a, x) == q.k) on.push_back(x);
    if (on.empty()) return false;
    RationalMatrix dirs;
    for (std::size_t i = 1; i < on.size(); ++i) {
        RationalVector d(p);
        for (std::size_t j = 0; j < p; ++j) d[j] = on[i][j] - on[0][j];
        dirs.push_back(d);
    }
    for (std::size_t j = 0; j < p; ++j) {
        bool free = std::all_of(P.inequalities.begin(), P.inequalities.end(),
                                [&](const LCTInequality& r) { return r.a[j] == 0; });
        if (free) {
            RationalVector e(p, Rational(0));
            e[j] = 1;
            dirs.push_back(e);
        }
    }
    return (dirs.empty() ? 0 : rank(dirs)) == p - 1;
}

struct ConjectureEntry {
    IntVector ray;
    Rational k;
    bool facet = false;
    bool verified_k = false;     // k from the arrangement rank formula rather than user input
    bool all_nonzero = false;    // every a_j != 0, so a facet predicts a Bernstein-Sato component
    std::optional<bool> translate_in_fixture;  // a . s + k = 0 listed in the fixture
};

// Facet test for every rigid ray in the nonnegative orthant. Arrangements
// must be indecomposable (connected matroid) and use k_F = rank F; other
// inputs need user discrepancies `k` for every ray of `lct_rays` (defaults to
// the nonnegative rigid rays).
inline std::vector<ConjectureEntry> conjecture_check(const VarietySpec& spec, const std::vector<Ray>& rays,
                                                     const DiscrepancyMap& k = {},
                                                     const std::vector<IntVector>& lct_rays = {},
                                                     const BSFixture* fixture = nullptr) {
    const std::size_t p = spec.ambient_dim();
    LCTPolytope P;
    bool arrangement = spec.kind == SpecKind::arrangement;
    if (arrangement) {
        Arrangement c = spec.arrangement;
        if (!c.is_central()) c.projective_closure = true;
        if (!matroid_connected(c.central()))
            throw PreconditionError("arrangement is decomposable; the facet statement needs an indecomposable one");
        P = arrangement_lct(spec.arrangement);
    } else {
        std::vector<IntVector> vs = lct_rays;
        if (vs.empty())
            for (const auto& r : rays)
                if (r.rigid) vs.push_back(r.v);
        P = lct_polytope(p, vs, k);
    }
    std::vector<ConjectureEntry> out;
    for (const auto& r : rays) {
        if (!r.rigid || !nonnegative(r.v)) continue;
        auto idx = P.index_of(r.v);
        if (!idx) throw PreconditionError("rigid ray " + to_string(r.v) + " has no inequality in the LCT polytope");
        ConjectureEntry e;
        e.ray = r.v;
        e.k = P.inequalities[*idx].k;
        e.facet = facet_defining(P, *idx);
        e.verified_k = arrangement;
        e.all_nonzero = std::all_of(r.v.begin(), r.v.end(), [](long long x) { return x != 0; });
        if (fixture) e.translate_in_fixture = fixture->has_translate(r.v, e.k);
        out.push_back(e);
    }
    return out;
}

} // namespace tropcrit

#endif
