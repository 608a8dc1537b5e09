#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "tropcrit/asymptotics.hpp"

using namespace tropcrit;
using namespace testing_helpers;

namespace {

using C = std::complex<double>;

VarietySpec conic_param() { return VarietySpec::parse_parametrization({"x", "y"}, {"x", "y", "x+y+x^2+x*y+y^2"}); }

DataCurve conic_curve() { return DataCurve::parse({"2+t", "1+t", "-3/2"}); }

std::vector<Ray> conic_rays() {
    std::vector<Ray> r;
    for (IntVector v : {IntVector{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {-1, -1, -2}}) r.push_back(Ray::make(v));
    return r;
}

std::vector<Polynomial> system(const std::vector<std::string>& vars, const std::vector<std::string>& eqs) {
    return Ideal::parse(vars, eqs).generators;
}

std::vector<const BranchReport*> of_kind(const AsymptoticsReport& r, const std::string& kind) {
    std::vector<const BranchReport*> out;
    for (const auto& b : r.branches)
        if (b.kind == kind) out.push_back(&b);
    return out;
}

} // namespace

TEST(SeriesLift, LinearSystemLiftsExactly) {
    auto lift = series_newton_lift<Rational>(system({"x", "t"}, {"x-t"}), {Rational(0)}, 6);
    EXPECT_EQ(lift.y[0].to_string(), "1*t + O(t^7)");
    EXPECT_GT(lift.residual_order, 6);
}

TEST(SeriesLift, SquareRootMatchesBinomialSeries) {
    // x^2 = 1 + t, x(0) = 1: coefficients binom(1/2, k).
    const int N = 7;
    auto lift = series_newton_lift<Rational>(system({"x", "t"}, {"x^2-1-t"}), {Rational(1)}, N);
    Rational b = 1;
    for (int k = 0; k <= N; ++k) {
        EXPECT_EQ(lift.y[0].coefficient(k), b) << k;
        b = b * (make_rational(1, 2) - k) / (k + 1);
    }
}

TEST(SeriesLift, ResidualValuationGrowsEveryStep) {
    auto lift = series_newton_lift<Rational>(system({"x", "y", "t"}, {"x^2+y-2-t", "x*y-1+t^2"}), {Rational(1), Rational(1)}, 6);
    for (std::size_t k = 0; k < lift.residual_history.size(); ++k)
        EXPECT_GE(lift.residual_history[k], static_cast<int>(k) + 1);
}

TEST(SeriesLift, FailureModes) {
    EXPECT_THROW(series_newton_lift<Rational>(system({"x", "t"}, {"x^2-t"}), {Rational(0)}, 4), NumericalError);
    EXPECT_THROW(series_newton_lift<Rational>(system({"x", "t"}, {"x-1-t"}), {Rational(2)}, 4), NumericalError);
    EXPECT_THROW(series_newton_lift<Rational>(system({"x", "y", "t"}, {"x-t"}), {Rational(0), Rational(0)}, 4),
                 PreconditionError);
}

TEST(SeriesLift, FloatingReproducesExact) {
    auto F = system({"x", "y", "t"}, {"x^2+y-2-t", "x*y-1+t^2"});
    auto exact = series_newton_lift<Rational>(F, {Rational(1), Rational(1)}, 6);
    auto flt = series_newton_lift<C>(F, {C(1), C(1)}, 6);
    EXPECT_LE(flt.relative_residual, 1e-10);
    for (std::size_t i = 0; i < 2; ++i)
        for (int k = 0; k <= 6; ++k) {
            double e = exact.y[i].coefficient(k).get_d();
            EXPECT_NEAR(flt.y[i].coefficient(k).real(), e, 1e-9 * std::max(1.0, std::fabs(e)));
        }
}

TEST(DataCurves, TransversalityAndValidation) {
    IntVector v{-1, -1, -2};
    EXPECT_TRUE(conic_curve().transverse_to(v));
    EXPECT_FALSE(DataCurve::parse({"2+t", "1-t", "-3/2"}).transverse_to(v));
    EXPECT_FALSE(DataCurve::parse({"3", "1+t", "-3/2"}).transverse_to(v));
    Sampler rng;
    EXPECT_THROW(validate_curve(conic_curve(), 4, {}, rng), ValidationError);
    std::vector<SlopeHyperplane> hs{SlopeHyperplane{{1, -1, 0}, 0}};
    EXPECT_THROW(validate_curve(DataCurve::parse({"1+t", "1+t", "2"}), 3, hs, rng), PreconditionError);
    EXPECT_NO_THROW(validate_curve(conic_curve(), 3, hs, rng));
}

TEST(Asymptotics, ConicInteriorBranchIsExact) {
    Sampler rng;
    auto rep = asymptotics(conic_param(), conic_curve(), conic_rays(), rng);
    auto in = of_kind(rep, "interior");
    ASSERT_EQ(in.size(), 1u);
    EXPECT_TRUE(in[0]->exact);
    EXPECT_EQ(in[0]->valuations, (IntVector{0, 0, 0}));
    EXPECT_EQ(in[0]->unknowns[0].rfind("3 + -74*t + 3508*t^2 + ", 0), 0u) << in[0]->unknowns[0];
    EXPECT_EQ(in[0]->unknowns[1].rfind("-3 + 62*t + -2948*t^2 + ", 0), 0u) << in[0]->unknowns[1];
}

TEST(Asymptotics, ConicInteriorSeriesSolvesDisplayedSystem) {
    // Independent check: substitute the truncated series into the displayed
    // equations and confirm the residual is O(t^{N+1}).
    const int N = 8;
    auto F = system({"x", "y", "t"},
                    {"x + 2*t*x - 2*x^2 + 2*t*x^2 + 4*y + 2*t*y + x*y + 2*t*x*y + 4*y^2 + 2*t*y^2",
                     "2*x + 2*t*x + 2*x^2 + 2*t*x^2 - y + 2*t*y - x*y + 2*t*x*y - 4*y^2 + 2*t*y^2"});
    auto lift = series_newton_lift<Rational>(F, {Rational(3), Rational(-3)}, N);
    EXPECT_EQ(lift.y[0].coefficient(1), -74);
    EXPECT_EQ(lift.y[0].coefficient(2), 3508);
    EXPECT_EQ(lift.y[1].coefficient(1), 62);
    EXPECT_EQ(lift.y[1].coefficient(2), -2948);
    Sampler rng;
    AsymptoticsOptions opt;
    opt.order = N;
    auto rep = asymptotics(conic_param(), conic_curve(), conic_rays(), rng, opt);
    auto in = of_kind(rep, "interior");
    ASSERT_EQ(in.size(), 1u);
    EXPECT_EQ(in[0]->unknowns[0], lift.y[0].to_string());
    EXPECT_EQ(in[0]->unknowns[1], lift.y[1].to_string());
}

TEST(Asymptotics, ConicEscapingBranches) {
    Sampler rng;
    auto rep = asymptotics(conic_param(), conic_curve(), conic_rays(), rng);
    auto esc = of_kind(rep, "escaping");
    ASSERT_EQ(esc.size(), 2u);
    // One branch has x ~ eta1/t, y ~ eta2/t; along both, y/x tends to a root
    // of 4b^2 + b - 2.
    const double r33 = std::sqrt(33.0);
    const double eta1 = (-7 + r33) / (15 - r33), eta2 = (-13 + 3 * r33) / (60 - 4 * r33);
    EXPECT_NEAR(eta1, -0.1356432, 1e-7);
    EXPECT_NEAR(eta2, 0.1143568, 1e-7);
    int matched = 0;
    std::vector<double> ratios;
    for (const auto* b : esc) {
        EXPECT_EQ(b->valuations, (IntVector{-1, -1, -2}));
        EXPECT_EQ(b->ray, (IntVector{-1, -1, -2}));
        EXPECT_TRUE(b->transverse);
        EXPECT_TRUE(b->accepted);
        EXPECT_EQ(b->leading_order, (std::vector<int>{-1, -1}));
        for (const auto& c : b->leading) EXPECT_NEAR(static_cast<double>(c.imag()), 0.0, 1e-12);
        double x = static_cast<double>(b->leading[0].real()), y = static_cast<double>(b->leading[1].real());
        ratios.push_back(y / x);
        if (std::fabs(x - eta1) <= 1e-6 * std::fabs(eta1)) {
            ++matched;
            EXPECT_NEAR(y, eta2, 1e-6 * std::fabs(eta2));
        }
    }
    EXPECT_EQ(matched, 1);
    std::sort(ratios.begin(), ratios.end());
    EXPECT_NEAR(ratios[0], (-1 - r33) / 8, 1e-9);
    EXPECT_NEAR(ratios[1], (-1 + r33) / 8, 1e-9);
}

TEST(Asymptotics, BranchCountMatchesMlDegree) {
    Sampler rng;
    auto rep = asymptotics(conic_param(), conic_curve(), conic_rays(), rng);
    EXPECT_EQ(rep.ml_degree, 3u);
    EXPECT_EQ(branch_count(rep), rep.ml_degree);
    EXPECT_TRUE(rep.warnings.empty());
}

TEST(Asymptotics, LongDoubleAgreesWithDouble) {
    Sampler r1, r2;
    AsymptoticsOptions hi;
    hi.precision = 64;
    auto a = asymptotics(conic_param(), conic_curve(), conic_rays(), r1);
    auto b = asymptotics(conic_param(), conic_curve(), conic_rays(), r2, hi);
    ASSERT_EQ(a.branches.size(), b.branches.size());
    std::vector<double> la, lb;
    for (const auto& x : of_kind(a, "escaping")) la.push_back(static_cast<double>(x->leading[0].real()));
    for (const auto& x : of_kind(b, "escaping")) lb.push_back(static_cast<double>(x->leading[0].real()));
    std::sort(la.begin(), la.end());
    std::sort(lb.begin(), lb.end());
    for (std::size_t i = 0; i < la.size(); ++i) EXPECT_NEAR(la[i], lb[i], 1e-12);
    AsymptoticsOptions bad;
    bad.precision = 80;
    EXPECT_THROW(asymptotics(conic_param(), conic_curve(), conic_rays(), r1, bad), ValidationError);
}

TEST(Asymptotics, IdealInputUsesLagrangeChart) {
    Sampler rng;
    auto rep = asymptotics(VarietySpec::from_ideal(conic_ideal()), conic_curve(), conic_rays(), rng);
    EXPECT_EQ(of_kind(rep, "interior").size(), 1u);
    auto esc = of_kind(rep, "escaping");
    ASSERT_EQ(esc.size(), 2u);
    for (const auto* b : esc) {
        EXPECT_EQ(b->valuations, (IntVector{-1, -1, -2}));
        EXPECT_EQ(b->chart_weight.size(), 4u);
    }
}

TEST(Asymptotics, ArrangementBranchFollowsRay) {
    // Unique critical point escapes when the data approach s2 + s3 = 0.
    Sampler rng;
    auto spec = VarietySpec::from_arrangement(hpa_arrangement());
    std::vector<Ray> rays;
    for (IntVector v : {IntVector{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, -1, -1, 0}, {1, 1, 1, 0}, {-1, -1, -1, -1}})
        rays.push_back(Ray::make(v));
    auto curve = DataCurve::parse({"3", "2+t", "-2", "5"});
    auto rep = asymptotics(spec, curve, rays, rng);
    EXPECT_TRUE(of_kind(rep, "interior").empty());
    auto esc = of_kind(rep, "escaping");
    ASSERT_EQ(esc.size(), 1u);
    EXPECT_EQ(esc[0]->valuations, (IntVector{0, -1, -1, 0}));
    EXPECT_TRUE(esc[0]->exact);
    EXPECT_EQ(branch_count(rep), rep.ml_degree);
}
