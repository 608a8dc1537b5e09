#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <set>

#include "helpers.hpp"
#include "tropcrit/io.hpp"

using namespace tropcrit;
using namespace testing_helpers;

namespace {

std::string fixture(const std::string& name) {
    return std::string(TROPCRIT_FIXTURES) + "/" + name;
}

std::string error_of(const std::string& source) {
    try {
        load_spec(source);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

std::set<IntVector> ray_set(const Json& rays) {
    std::set<IntVector> s;
    for (const auto& r : rays) s.insert(r["vector"].get<IntVector>());
    return s;
}

std::set<IntVector> normal_set(const Json& hs) {
    std::set<IntVector> s;
    for (const auto& h : hs) s.insert(h["normal"].get<IntVector>());
    return s;
}

JobConfig job(const std::string& command, const std::string& spec) {
    JobConfig c;
    c.command = command;
    c.spec = load_spec(fixture(spec));
    return c;
}

// Every number in the report that is a computed value sits in an object that
// carries an "exact" tag, or is an integer vector (rays, normals, options).
void check_tagged(const Json& j, const std::string& ptr, bool tagged_parent) {
    if (j.is_object()) {
        bool tagged = j.contains("exact");
        for (auto it = j.begin(); it != j.end(); ++it) check_tagged(it.value(), ptr + "/" + it.key(), tagged);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) check_tagged(j[i], ptr + "/" + std::to_string(i), tagged_parent);
    } else if (j.is_number_float()) {
        EXPECT_TRUE(tagged_parent) << ptr;
    }
}

} // namespace

TEST(LoadSpec, CoinFixture) {
    auto s = load_spec(fixture("coin.json"));
    EXPECT_EQ(s.kind, SpecKind::ideal);
    EXPECT_EQ(s.ideal.generators.size(), 2u);
    EXPECT_EQ(s.ideal.nvars(), 3u);
    EXPECT_TRUE(same_ideal(s.ideal, coin_ideal()));
}

TEST(LoadSpec, ArrangementFixture) {
    auto s = load_spec(fixture("hpa.json"));
    EXPECT_EQ(s.kind, SpecKind::arrangement);
    EXPECT_EQ(s.arrangement.size(), 4u);
    EXPECT_EQ(s.arrangement.dim(), 2u);
    EXPECT_TRUE(s.arrangement.projective_closure);
    auto I = arrangement_ideal(s.arrangement, {"t1", "t2", "t3", "t4"});
    EXPECT_TRUE(same_ideal(I, load_spec(fixture("hpa_ideal.json")).ideal));
}

TEST(LoadSpec, InlineJson) {
    auto s = load_spec(R"({"kind": "parametrization", "parameters": ["x"], "functions": ["x", "1-x"]})");
    EXPECT_EQ(s.kind, SpecKind::parametrization);
    EXPECT_EQ(s.ambient_dim(), 2u);
}

TEST(LoadSpec, ErrorsNameTheOffendingField) {
    std::string e = error_of(R"({"kind": "ideal", "variables": ["x", "y"], "generators": ["x*y", "x^y - 1"]})");
    EXPECT_NE(e.find("/generators/1"), std::string::npos) << e;
    e = error_of(R"({"kind": "ideal", "variables": ["x"]})");
    EXPECT_NE(e.find("/generators"), std::string::npos) << e;
    e = error_of(R"({"kind": "simplex"})");
    EXPECT_NE(e.find("/kind"), std::string::npos) << e;
    e = error_of(R"({"kind": "arrangement", "variables": ["x"], "matrix": [[1, 0], [1, "a/b"]]})");
    EXPECT_NE(e.find("/matrix/1/1"), std::string::npos) << e;
    e = error_of(R"({"kind": "arrangement", "variables": ["x"], "matrix": [[1, 0, 2]]})");
    EXPECT_NE(e.find("/matrix/0"), std::string::npos) << e;
    e = error_of(R"({"kind": "ideal", "variables": ["x", "x"], "generators": []})");
    EXPECT_NE(e.find("/variables/1"), std::string::npos) << e;
    e = error_of(R"({"kind": "ideal", "variables": ["x"], "generators": ["x"], "schema": "tropcrit/spec/9"})");
    EXPECT_NE(e.find("/schema"), std::string::npos) << e;
    EXPECT_NE(error_of("{not json").find("invalid JSON"), std::string::npos);
    EXPECT_NE(error_of(fixture("missing.json")).find("cannot open"), std::string::npos);
}

TEST(LoadSpec, RoundTripOnFixtures) {
    for (const auto* name : {"coin.json", "hpa.json", "hpa_ideal.json", "conic.json", "conic_ideal.json"}) {
        auto s = load_spec(fixture(name));
        Json j = spec_to_json(s);
        auto back = spec_from_json(j);
        EXPECT_EQ(spec_to_json(back), j) << name;
        EXPECT_EQ(back.kind, s.kind);
    }
}

TEST(LoadSpec, RoundTripRandomSpecs) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Polynomial> gens{random_poly(rng, 3), random_poly(rng, 3)};
        auto s = VarietySpec::from_ideal(Ideal(Ring({"a", "b", "c"}), gens));
        auto back = load_spec(spec_to_json(s).dump());
        ASSERT_EQ(back.ideal.generators.size(), s.ideal.generators.size());
        for (std::size_t i = 0; i < s.ideal.generators.size(); ++i) EXPECT_EQ(back.ideal.generators[i], s.ideal.generators[i]);

        Arrangement a;
        a.variables = {"x", "y"};
        for (int r = 0; r < 3; ++r) {
            RationalVector row{random_rational(rng, 9), random_rational(rng, 9), random_rational(rng, 9)};
            if (row[0] == 0 && row[1] == 0) row[0] = 1;
            a.rows.push_back(row);
        }
        VarietySpec as;
        as.kind = SpecKind::arrangement;
        as.arrangement = a;
        Json aj = spec_to_json(as);
        auto ab = spec_from_json(aj);
        EXPECT_EQ(ab.arrangement.rows, a.rows);
    }
}

TEST(Loaders, CurveFixtureAndDiscrepancies) {
    auto c = curve_from_json(load_json(fixture("conic_curve.json")));
    EXPECT_EQ(c.to_string(), DataCurve::parse({"2+t", "1+t", "-3/2"}).to_string());
    auto f = bs_fixture_from_json(load_json(fixture("coin_bs.json")));
    ASSERT_EQ(f.factors.size(), 2u);
    EXPECT_EQ(f.factors[0].offsets, (RationalVector{1, 2, 3}));
    EXPECT_TRUE(f.has_translate({2, 1, 0}, 3));
    auto h = bs_fixture_from_json(load_json(fixture("hpa_bs.json")));
    EXPECT_EQ(h.slopes().size(), 5u);
    auto d = discrepancies_from_json(load_json(fixture("coin_discrepancies.json")));
    EXPECT_EQ(d.k.size(), 2u);
    EXPECT_EQ(d.k.at({0, 1, 1}), 1);
    EXPECT_THROW(discrepancies_from_json(Json::parse(R"({"discrepancies": [{"ray": [1], "k": 0}]})")), ValidationError);
    EXPECT_THROW(bs_fixture_from_json(Json::parse(R"({"factors": [{"normal": [0, 0]}]})")), ValidationError);
}

TEST(JobConfig, OptionRanges) {
    JobConfig c;
    c.spec = load_spec(fixture("coin.json"));
    c.bound = 0;
    EXPECT_THROW(c.validate(), ValidationError);
    c.bound = 2;
    c.precision = 80;
    EXPECT_THROW(c.validate(), ValidationError);
    c.precision = 64;
    c.command = "plot";
    EXPECT_THROW(c.validate(), ValidationError);
    c.command = "asymptotics";
    EXPECT_THROW(c.validate(), ValidationError);
}

TEST(RunJob, CoinReport) {
    auto c = job("report", "coin.json");
    c.bs_fixture = bs_fixture_from_json(load_json(fixture("coin_bs.json")));
    c.discrepancies = discrepancies_from_json(load_json(fixture("coin_discrepancies.json")));
    auto r = run_job(c).json;
    EXPECT_EQ(ray_set(r["rays"]), (std::set<IntVector>{{2, 1, 0}, {0, 1, 1}, {-2, -2, -1}}));
    EXPECT_EQ(normal_set(r["slopes"]), (std::set<IntVector>{{2, 1, 0}, {0, 1, 1}, {2, 2, 1}}));
    EXPECT_EQ(r["ml_degree"]["value"], 1);
    std::vector<Json> constants;
    for (const auto& x : r["mle"]["coordinates"]) constants.push_back(x["constant"]);
    EXPECT_EQ(constants, (std::vector<Json>{1, 1, 1}));
    EXPECT_EQ(r["mle"]["coordinates"][0]["formula"], "(2*s0+s1)^2/(2*s0+2*s1+s2)^2");
    EXPECT_EQ(normal_set(r["bs_slopes"]["intersection_with_SF"]), (std::set<IntVector>{{2, 1, 0}, {0, 1, 1}}));
    EXPECT_EQ(r["bs_slopes"]["consistent"], true);
    EXPECT_EQ(r["euler"]["weighted_sum"], (IntVector{0, 0, 0}));
    ASSERT_EQ(r["lct"]["entries"].size(), 2u);
    for (const auto& e : r["lct"]["entries"]) EXPECT_EQ(e["facet_defining"], true);
    EXPECT_EQ(r["seed"], 20240601u);
}

TEST(RunJob, ConicRigidRays) {
    auto c = job("rigid-rays", "conic.json");
    auto r = run_job(c).json;
    EXPECT_EQ(ray_set(r["rays"]), (std::set<IntVector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {-1, -1, -2}}));
    EXPECT_FALSE(r.contains("slopes"));
}

TEST(RunJob, ConicAsymptotics) {
    auto c = job("asymptotics", "conic.json");
    c.curve = curve_from_json(load_json(fixture("conic_curve.json")));
    auto r = run_job(c).json;
    std::multiset<IntVector> vals;
    for (const auto& b : r["asymptotics"]["branches"]) vals.insert(b["valuations"].get<IntVector>());
    EXPECT_EQ(vals, (std::multiset<IntVector>{{0, 0, 0}, {-1, -1, -2}, {-1, -1, -2}}));
    EXPECT_EQ(r["asymptotics"]["branches"][0]["coordinates"][0].get<std::string>().rfind("3 + -74*t + 3508*t^2", 0), 0u);
    std::set<std::string> codes;
    for (const auto& w : r["warnings"]) codes.insert(w["code"]);
    EXPECT_EQ(codes.count("approximate-coefficients"), 1u);
    EXPECT_EQ(codes.count("branch-count-mismatch"), 0u);
    check_tagged(r, "", false);
}

TEST(RunJob, HpaBernsteinSatoReport) {
    auto c = job("bs-slopes", "hpa.json");
    c.bs_fixture = bs_fixture_from_json(load_json(fixture("hpa_bs.json")));
    auto r = run_job(c).json["bs_slopes"];
    EXPECT_EQ(normal_set(r["intersection_with_SF"]),
              (std::set<IntVector>{{1, 1, 1, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
    EXPECT_EQ(normal_set(r["bs_only"]), (std::set<IntVector>{{1, 0, 0, 0}}));
    EXPECT_EQ(normal_set(r["sf_only"]), (std::set<IntVector>{{1, 1, 1, 1}, {0, 1, 1, 0}}));
    EXPECT_EQ(r["bs_only"][0]["form"], "s1");
}

TEST(RunJob, ByteStableAndSeedSensitiveOnlyInSamples) {
    auto c = job("report", "hpa.json");
    auto a = run_job(c).json.dump(2);
    auto b = run_job(c).json.dump(2);
    EXPECT_EQ(a, b);
    c.seed = 17;
    auto r = run_job(c).json;
    EXPECT_EQ(r["seed"], 17);
    EXPECT_EQ(r["mle"]["coordinates"][3]["formula"], "-s4/(s1+s2+s3+s4)");
}

TEST(RunJob, WarningsAreEnumeratedInSchema) {
    auto schema = schema_json();
    std::set<std::string> allowed;
    for (const auto& c : schema["report"]["properties"]["warnings"]["items"]["properties"]["code"]["enum"])
        allowed.insert(c);
    for (const auto* name : {"coin.json", "conic.json", "hpa_ideal.json"}) {
        auto r = run_job(job("report", name)).json;
        ASSERT_FALSE(r["warnings"].empty());
        for (const auto& w : r["warnings"]) EXPECT_EQ(allowed.count(w["code"]), 1u) << w.dump();
        check_tagged(r, "", false);
    }
    EXPECT_EQ(schema["version"], kVersion);
    EXPECT_EQ(schema["spec"]["$id"], kSpecSchema);
}

TEST(RunJob, LctNeedsDiscrepanciesOutsideArrangements) {
    EXPECT_THROW(run_job(job("lct", "coin.json")), PreconditionError);
    auto r = run_job(job("lct", "hpa.json")).json;
    EXPECT_EQ(r["lct"]["verified_k"], true);
    EXPECT_EQ(r["lct"]["entries"].size(), 4u);
}

TEST(ExitCodes, DisjointAcrossErrorKinds) {
    std::set<int> codes{0, 1};  // success, internal failure
    for (auto k : {ErrorKind::validation, ErrorKind::resource, ErrorKind::degenerate,
                   ErrorKind::precondition, ErrorKind::numerical})
        EXPECT_TRUE(codes.insert(exit_code(k)).second);
}
