#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "tropcrit/tropical.hpp"

using namespace tropcrit;
using namespace testing_helpers;

namespace {

std::vector<IntVector> vectors(const std::vector<Ray>& rays) {
    std::vector<IntVector> v;
    for (const auto& r : rays) v.push_back(r.v);
    return v;
}

std::set<IntVector> normals(const std::vector<SlopeHyperplane>& hs) {
    std::set<IntVector> s;
    for (const auto& h : hs) s.insert(h.normal);
    return s;
}

} // namespace

TEST(Tropical, Membership) {
    EXPECT_TRUE(trop_contains(coin_ideal(), {2, 1, 0}));
    EXPECT_FALSE(trop_contains(coin_ideal(), {1, 0, 0}));
    EXPECT_FALSE(trop_contains(ideal({"t1"}, {"t1-1"}), {1}));
    EXPECT_TRUE(trop_contains(ideal({"t1"}, {"t1-1"}), {0}));
}

TEST(Tropical, Rigidity) {
    for (IntVector w : {IntVector{2, 1, 0}, IntVector{0, 1, 1}, IntVector{-2, -2, -1}})
        EXPECT_TRUE(is_rigid(coin_ideal(), w)) << to_string(w);
    EXPECT_FALSE(is_rigid(ex312_ideal(), {1, 0, 0, 0}));
    EXPECT_TRUE(is_rigid(conic_ideal(), {-1, -1, -2}));
    EXPECT_THROW(is_rigid(coin_ideal(), {1, 0, 0}), PreconditionError);
}

TEST(Tropical, RigidRaysOfHpaIdeal) {
    std::set<IntVector> expected{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, -1, -1, 0}, {1, 1, 1, 0}, {-1, -1, -1, -1}};
    EXPECT_EQ(to_set(vectors(find_rigid_rays(ex312_ideal(), 2))), expected);
}

TEST(Tropical, RigidRaysOfConicAndCoin) {
    std::set<IntVector> conic{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {-1, -1, -2}};
    EXPECT_EQ(to_set(vectors(find_rigid_rays(conic_ideal(), 2))), conic);
    std::set<IntVector> coin{{2, 1, 0}, {0, 1, 1}, {-2, -2, -1}};
    EXPECT_EQ(to_set(vectors(find_rigid_rays(coin_ideal(), 2))), coin);
}

TEST(Tropical, FullTorusHasNoRigidRays) {
    EXPECT_TRUE(find_rigid_rays(Ideal(Ring({"a", "b"}), {}), 2).empty());
}

TEST(Tropical, SearchedRaysRecheck) {
    TropicalContext ctx(conic_ideal());
    for (const auto& r : find_rigid_rays(conic_ideal(), 2)) {
        EXPECT_TRUE(trop_contains(conic_ideal(), r.v));
        EXPECT_TRUE(ctx.rigid(r.v));
        EXPECT_EQ(gcd_of(r.v), 1);
    }
}

TEST(Tropical, CriticalSlopes) {
    auto hpa = critical_slopes(find_rigid_rays(ex312_ideal(), 2));
    std::set<IntVector> expected{{1, 1, 1, 1}, {0, 1, 1, 0}, {1, 1, 1, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    EXPECT_EQ(normals(hpa), expected);
    auto coin = critical_slopes(find_rigid_rays(coin_ideal(), 2));
    EXPECT_EQ(normals(coin), (std::set<IntVector>{{2, 1, 0}, {0, 1, 1}, {2, 2, 1}}));
    EXPECT_TRUE(critical_slopes({}).empty());
    EXPECT_EQ(to_string(coin[0], slope_names(3, "s", true)).empty(), false);
}

TEST(Tropical, SlopesComeFromTropicalVectors) {
    // Every slope normal is (up to sign) a vector in the tropical variety.
    auto rays = find_rigid_rays(conic_ideal(), 2);
    for (const auto& h : critical_slopes(rays)) {
        IntVector neg = h.normal;
        for (auto& x : neg) x = -x;
        EXPECT_TRUE(trop_contains(conic_ideal(), h.normal) || trop_contains(conic_ideal(), neg));
    }
}

TEST(Tropical, StratumModels) {
    TropicalContext conic(conic_ideal());
    auto s = stratum_model(conic, {-1, -1, -2});
    EXPECT_EQ(s.ideal.nvars(), 2u);
    EXPECT_EQ(ideal_dimension(s.ideal), 1);
    EXPECT_EQ(s.ideal.generators.size(), 1u);
    EXPECT_EQ(s.ideal.generators[0].total_degree(), 2);

    TropicalContext coin(coin_ideal());
    EXPECT_EQ(ideal_dimension(stratum_model(coin, {2, 1, 0}).ideal), 0);
    EXPECT_THROW(stratum_model(coin, {1, 0, 0}), PreconditionError);
}

TEST(Tropical, StratumOfPrincipalIdealIsEdgePolynomial) {
    // Edge of the Newton polygon with normal (1,0): 1 + 3 t2 + 2 t2^2.
    auto I = ideal({"t1", "t2"}, {"1+3*t2+2*t2^2+t1"});
    TropicalContext ctx(I);
    auto s = stratum_model(ctx, {1, 0});
    EXPECT_EQ(zero_dim_degree(s.ideal), 2u);
    auto edge = ideal({"y"}, {"1+3*y+2*y^2"});
    EXPECT_EQ(zero_dim_degree(edge), 2u);
    Sampler rng;
    EXPECT_EQ(stratum_euler_char(ctx, {1, 0}, rng), 2);
}

TEST(Tropical, StratumEulerCharacteristics) {
    Sampler rng;
    EXPECT_EQ(stratum_euler_char(conic_ideal(), Ray::make({-1, -1, -2}), rng), -2);
    EXPECT_EQ(stratum_euler_char(ex312_ideal(), Ray::make({1, 0, 0, 0}), rng), 0);
    EXPECT_EQ(std::llabs(stratum_euler_char(coin_ideal(), Ray::make({2, 1, 0}), rng)), 1);
}

TEST(Tropical, EulerCharacteristicIndependentOfTransform) {
    Sampler rng;
    TropicalContext ctx(conic_ideal());
    IntVector v{-1, -1, -2};
    IntMatrix u = unimodular_to_e1(v);
    IntMatrix e{{1, 2, 0}, {0, 1, 0}, {0, 3, 1}};  // fixes e1
    IntMatrix u2 = mat_mul(e, u);
    EXPECT_EQ(stratum_euler_char(ctx, v, rng, u), stratum_euler_char(ctx, v, rng, u2));
    EXPECT_THROW(stratum_model(ctx, v, identity_matrix(3)), ValidationError);
}

TEST(Tropical, EscapeCertificates) {
    Sampler rng;
    RationalVector alpha{2, 1, make_rational(-3, 2)};
    EXPECT_TRUE(certify_escape_direction(conic_ideal(), Ray::make({-1, -1, -2}), alpha, rng));
    RationalVector a0{0, make_rational(3, 7), make_rational(-5, 11), make_rational(2, 13)};
    EXPECT_FALSE(certify_escape_direction(ex312_ideal(), Ray::make({1, 0, 0, 0}), a0, rng));
    EXPECT_THROW(certify_escape_direction(conic_ideal(), Ray::make({-1, -1, -2}), RationalVector{1, 1, 1}, rng),
                 ValidationError);
}

TEST(Tropical, WeightedRaySum) {
    Sampler rng;
    TropicalContext ctx(conic_ideal());
    std::vector<long long> chis;
    EXPECT_EQ(weighted_ray_sum(ctx, find_rigid_rays(conic_ideal(), 2), rng, &chis), (IntVector{0, 0, 0}));
    EXPECT_EQ(weighted_ray_sum(ctx, {}, rng), (IntVector{0, 0, 0}));
}

TEST(TropicalProperty, RescalingInvariance) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-2, 2), lam(2, 4);
    for (const auto& I : {coin_ideal(), conic_ideal()}) {
        TropicalContext ctx(I);
        for (int trial = 0; trial < 12; ++trial) {
            IntVector w{d(rng), d(rng), d(rng)};
            IntVector lw = w;
            int l = lam(rng);
            for (auto& x : lw) x *= l;
            EXPECT_EQ(ctx.contains(w), ctx.contains(lw)) << to_string(w);
            EXPECT_TRUE(same_ideal(initial_ideal(I, w), initial_ideal(I, lw))) << to_string(w);
        }
    }
}

TEST(TropicalProperty, HomogeneitySpaceContainsWeight) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(-3, 3);
    for (const auto& I : {coin_ideal(), conic_ideal(), ex312_ideal()}) {
        for (int trial = 0; trial < 10; ++trial) {
            IntVector w(I.nvars());
            for (auto& x : w) x = d(rng);
            EXPECT_TRUE(homogeneity_space(initial_ideal(I, w)).contains(to_rational(w))) << to_string(w);
        }
    }
}
