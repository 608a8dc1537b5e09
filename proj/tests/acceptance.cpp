// Acceptance checks 1-9. One PASS/FAIL line per criterion; exit status is the
// number of failures.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "tropcrit/io.hpp"

using namespace tropcrit;

namespace {

// Pinned tolerances and time limits (seconds).
constexpr double kLeadingRelTol = 1e-6;
constexpr double kLimit1 = 30, kLimit2 = 5, kLimit4 = 30, kLimit5 = 30, kLimit7 = 60, kLimit9 = 300;

std::string fixture(const std::string& name) { return std::string(TROPCRIT_FIXTURES) + "/" + name; }

struct Check {
    std::ostringstream why;
    bool ok = true;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            why << (why.tellp() > 0 ? "; " : "") << what;
        }
    }
};

int failures = 0;

void criterion(int n, const std::string& title, double limit, const std::function<void(Check&)>& body) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit > 0) c.expect(secs < limit, "took " + std::to_string(secs) + " s, limit " + std::to_string(limit) + " s");
    if (!c.ok) ++failures;
    std::printf("[%s] %d. %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", n, title.c_str(), secs, c.ok ? "" : ": ",
                c.why.str().c_str());
}

std::set<IntVector> ray_set(const std::vector<Ray>& rays) {
    std::set<IntVector> s;
    for (const auto& r : rays) s.insert(r.v);
    return s;
}

std::set<IntVector> normal_set(const std::vector<SlopeHyperplane>& hs) {
    std::set<IntVector> s;
    for (const auto& h : hs) s.insert(sign_normalized(h.normal));
    return s;
}

std::set<IntVector> normalized(std::set<IntVector> s) {
    std::set<IntVector> out;
    for (const auto& v : s) out.insert(sign_normalized(v));
    return out;
}

Ideal torus(const std::string& spec) { return torus_ideal(load_spec(fixture(spec))); }

Arrangement central(std::vector<std::string> vars, const std::vector<IntVector>& normals) {
    Arrangement a;
    a.variables = std::move(vars);
    for (auto v : normals) {
        v.push_back(0);
        a.rows.push_back(to_rational(v));
    }
    return a;
}

const std::set<IntVector> kHpaRays{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1},
                                   {0, -1, -1, 0}, {1, 1, 1, 0}, {-1, -1, -1, -1}};

} // namespace

int main() {
    criterion(1, "rigid rays of (t1-t4-1, t1-t2-t3), bound 2", kLimit1, [](Check& c) {
        auto rays = find_rigid_rays(torus("hpa_ideal.json"), 2);
        c.expect(ray_set(rays) == kHpaRays, "ray set differs");
        c.expect(rays.size() == kHpaRays.size(), "duplicate rays");
    });

    std::vector<Ray> hpa_rays;
    for (const auto& v : kHpaRays) hpa_rays.push_back(Ray::make(v, true));

    criterion(2, "critical slopes of xy(x-y)(x-1)", kLimit2, [&](Check& c) {
        auto got = normal_set(critical_slopes(hpa_rays));
        auto want = normalized({{1, 1, 1, 1}, {0, 1, 1, 0}, {1, 1, 1, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
        c.expect(got == want, "slope set differs");
    });

    criterion(3, "flacet rays equal rigid-ray search (projectivized arrangement)", 0, [](Check& c) {
        auto spec = load_spec(fixture("hpa.json"));
        auto a = spec.arrangement;
        c.expect(a.projective_closure && a.size() + 1 == 5, "fixture is not the 5-hyperplane closure");
        auto fl = flacet_rays(a);
        std::set<IntVector> flacet(fl.begin(), fl.end());
        c.expect(flacet.size() == fl.size(), "duplicate flacet rays");
        c.expect(flacet == ray_set(find_rigid_rays(torus_ideal(spec), 2)), "sets differ");
    });

    criterion(4, "closed-form MLE of xy(x-y)(x-1), 20 exact verifications", kLimit4, [&](Check& c) {
        Sampler rng;
        auto f = mle_closed_form(load_spec(fixture("hpa.json")), hpa_rays, rng, 20);
        const char* want[] = {"(s1+s2+s3)/(s1+s2+s3+s4)", "s2*(s1+s2+s3)/((s2+s3)*(s1+s2+s3+s4))",
                              "s3*(s1+s2+s3)/((s2+s3)*(s1+s2+s3+s4))", "-s4/(s1+s2+s3+s4)"};
        c.expect(f.coordinates.size() == 4, "wrong number of coordinates");
        for (std::size_t i = 0; i < 4 && i < f.coordinates.size(); ++i)
            c.expect(f.pretty(i) == want[i], "psi_" + std::to_string(i + 1) + " = " + f.pretty(i));
        c.expect(f.verified_samples == 20, "verified at " + std::to_string(f.verified_samples) + " samples");
    });

    criterion(5, "coin model: rays, ML degree, estimator, BS slopes", kLimit5, [](Check& c) {
        auto spec = load_spec(fixture("coin.json"));
        Ideal X = torus_ideal(spec);
        TropicalContext ctx(X);
        std::vector<Ray> rays;
        for (IntVector v : {IntVector{2, 1, 0}, IntVector{0, 1, 1}, IntVector{-2, -2, -1}}) {
            c.expect(ctx.contains(v) && ctx.rigid(v), to_string(v) + " not rigid");
            rays.push_back(Ray::make(v, true));
        }
        c.expect(ray_set(find_rigid_rays(X, 2)) == ray_set(rays), "search finds other rays");
        Sampler rng;
        c.expect(ml_degree(spec, rng).degree == 1, "ML degree != 1");
        auto f = mle_closed_form(spec, rays, rng);
        const char* want[] = {"(2*s0+s1)^2/(2*s0+2*s1+s2)^2", "(2*s0+s1)*(s1+s2)/(2*s0+2*s1+s2)^2",
                              "(s1+s2)/(2*s0+2*s1+s2)"};
        for (std::size_t i = 0; i < 3; ++i) {
            c.expect(f.pretty(i) == want[i], "psi_" + std::to_string(i + 1) + " = " + f.pretty(i));
            c.expect(f.coordinates[i].constant == 1, "c_" + std::to_string(i + 1) + " != 1");
        }
        auto bs = bs_slope_intersection(rays);
        c.expect(normal_set(bs.intersection_with_SF) == std::set<IntVector>{{2, 1, 0}, {0, 1, 1}}, "BS intersection differs");
    });

    criterion(6, "conic: rigid rays, ML degree 3, chi(-1,-1,-2) = -2, weighted sum 0", 0, [](Check& c) {
        auto spec = load_spec(fixture("conic.json"));
        Ideal X = torus_ideal(spec);
        TropicalContext ctx(X);
        auto rays = find_rigid_rays(X, 2);
        c.expect(ray_set(rays) == std::set<IntVector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {-1, -1, -2}},
                 "ray set differs");
        Sampler rng;
        c.expect(ml_degree(spec, rng).degree == 3, "ML degree != 3");
        long long chi = stratum_euler_char(ctx, {-1, -1, -2}, rng);
        c.expect(chi == -2, "chi = " + std::to_string(chi));
        c.expect(is_zero(weighted_ray_sum(ctx, rays, rng)), "weighted ray sum nonzero");
    });

    criterion(7, "conic series along (2+t, 1+t, -3/2), order 8", kLimit7, [](Check& c) {
        auto spec = load_spec(fixture("conic.json"));
        auto curve = curve_from_json(load_json(fixture("conic_curve.json")));
        auto rays = find_rigid_rays(torus_ideal(spec), 2);
        Sampler rng;
        AsymptoticsOptions opt;
        opt.order = 8;
        auto rep = asymptotics(spec, curve, rays, rng, opt);
        const BranchReport* interior = nullptr;
        std::vector<const BranchReport*> esc;
        for (const auto& b : rep.branches) {
            if (b.kind == "interior") interior = &b;
            else esc.push_back(&b);
        }
        c.expect(interior && interior->exact, "no exact interior branch");
        if (interior) {
            c.expect(interior->unknowns[0].rfind("3 + -74*t + 3508*t^2 + ", 0) == 0, "x = " + interior->unknowns[0]);
            c.expect(interior->unknowns[1].rfind("-3 + 62*t + -2948*t^2 + ", 0) == 0, "y = " + interior->unknowns[1]);
        }
        const double r33 = std::sqrt(33.0);
        const double eta1 = (-7 + r33) / (15 - r33), eta2 = (-13 + 3 * r33) / (60 - 4 * r33);
        int matched = 0;
        for (const auto* b : esc) {
            c.expect(b->valuations == IntVector{-1, -1, -2}, "valuations " + to_string(b->valuations));
            double x = static_cast<double>(b->leading[0].real()), y = static_cast<double>(b->leading[1].real());
            if (std::fabs(x - eta1) <= kLeadingRelTol * std::fabs(eta1) &&
                std::fabs(y - eta2) <= kLeadingRelTol * std::fabs(eta2))
                ++matched;
        }
        c.expect(esc.size() == 2, std::to_string(esc.size()) + " escaping branches");
        c.expect(matched == 1, "no escaping branch with leading coefficients (eta1, eta2)");
    });

    criterion(8, "Bernstein-Sato slopes of xy(x-y)(x-1) against the external fixture", 0, [&](Check& c) {
        auto fx = bs_fixture_from_json(load_json(fixture("hpa_bs.json")));
        auto r = bs_slope_intersection(hpa_rays, &fx);
        c.expect(normal_set(r.intersection_with_SF) ==
                     std::set<IntVector>{{1, 1, 1, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
                 "intersection differs");
        c.expect(normal_set(r.bs_only) == std::set<IntVector>{{1, 0, 0, 0}}, "s1 not flagged as fixture-only");
        c.expect(normal_set(r.sf_only) == std::set<IntVector>{{1, 1, 1, 1}, {0, 1, 1, 0}},
                 "S_F-only components differ");
        c.expect(r.consistent, "fixture inconsistent with prediction");
    });

    criterion(9, "property suite", kLimit9, [](Check& c) {
        Sampler rng;
        // positive rescaling and homogeneity space
        for (const auto* name : {"coin.json", "conic.json", "hpa_ideal.json"}) {
            Ideal X = torus(name);
            TropicalContext ctx(X);
            const std::size_t n = X.nvars();
            for (int trial = 0; trial < 6; ++trial) {
                IntVector w(n);
                for (auto& x : w) x = static_cast<long long>(rng.integer(-2, 2));
                IntVector w3 = w;
                for (auto& x : w3) x *= 3;
                c.expect(trop_contains(X, w) == trop_contains(X, w3), std::string(name) + ": trop_contains " + to_string(w));
                auto a = initial_ideal(X, w), b = initial_ideal(X, w3);
                c.expect(same_ideal(a, b), std::string(name) + ": initial ideal " + to_string(w));
                c.expect(homogeneity_space(a).contains(to_rational(w)), std::string(name) + ": homogeneity " + to_string(w));
            }
        }
        // rays sum to zero when the ML degree is 1
        for (const auto* name : {"coin.json", "hpa_ideal.json"}) {
            auto spec = load_spec(fixture(name));
            c.expect(ml_degree(spec, rng).degree == 1, std::string(name) + ": ML degree != 1");
            IntVector s(spec.ambient_dim(), 0);
            for (const auto& r : find_rigid_rays(torus_ideal(spec), 2))
                for (std::size_t i = 0; i < s.size(); ++i) s[i] += r.v[i];
            c.expect(is_zero(s), std::string(name) + ": rays sum to " + to_string(s));
        }
        // |chi| = ML degree on every essential arrangement of up to 5 lines from a pool
        std::vector<RationalVector> pool{to_rational(IntVector{1, 0, 0}),  to_rational(IntVector{0, 1, 0}),
                                         to_rational(IntVector{1, -1, 0}), to_rational(IntVector{1, 0, -1}),
                                         to_rational(IntVector{1, 1, -1}), to_rational(IntVector{0, 1, -2})};
        int checked = 0;
        for (std::size_t mask = 1; mask < (1u << pool.size()); ++mask) {
            if (std::popcount(mask) > 5) continue;
            Arrangement a;
            a.variables = {"x", "y"};
            for (std::size_t i = 0; i < pool.size(); ++i)
                if (mask >> i & 1) a.rows.push_back(pool[i]);
            RationalMatrix normals;
            for (const auto& row : a.rows) normals.push_back({row[0], row[1]});
            if (rank(normals) < 2) continue;
            long long chi = chi_complement(a);
            auto deg = ml_degree(VarietySpec::from_arrangement(a), rng).degree;
            c.expect(static_cast<long long>(deg) == std::llabs(chi), "arrangement mask " + std::to_string(mask));
            ++checked;
        }
        c.expect(checked == 54, "checked " + std::to_string(checked) + " arrangements");
        // all-ones inequality at k = rank is a facet on indecomposable central arrangements
        std::vector<Arrangement> indecomposable{
            central({"x", "y"}, {{1, 0}, {0, 1}, {1, 1}}),
            central({"x", "y", "z"}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}),
            central({"a", "b", "c", "d"},
                    {{1, -1, 0, 0}, {1, 0, -1, 0}, {1, 0, 0, -1}, {0, 1, -1, 0}, {0, 1, 0, -1}, {0, 0, 1, -1}}),
        };
        for (const auto& a : indecomposable) {
            auto P = arrangement_lct(a);
            IntVector ones(a.size(), 1);
            auto idx = P.index_of(ones);
            c.expect(idx && P.inequalities[*idx].k == static_cast<long>(a.rows.empty() ? 0 : rank(a.rows)),
                     "all-ones inequality missing or k != rank");
            c.expect(idx && facet_defining(P, *idx), "all-ones not facet-defining");
        }
    });

    std::printf("%d of 9 criteria failed\n", failures);
    return failures;
}
