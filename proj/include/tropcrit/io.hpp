#ifndef TROPCRIT_IO_HPP
#define TROPCRIT_IO_HPP

// JSON inputs (specs, curves, Bernstein-Sato fixtures, discrepancies), report
// assembly for the CLI commands and the published schemas.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "asymptotics.hpp"
#include "bs_lct.hpp"
#include "errors.hpp"
#include "mle.hpp"
#include "tropical.hpp"
#include "variety.hpp"

namespace tropcrit {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kSpecSchema = "tropcrit/spec/1";
inline constexpr const char* kReportSchema = "tropcrit/report/1";

namespace detail {

inline std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
inline std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

[[noreturn]] inline void schema_error(const std::string& ptr, const std::string& msg) {
    throw ValidationError((ptr.empty() ? "/" : ptr) + ": " + msg);
}

inline const Json& field(const Json& j, const std::string& key, const std::string& ptr) {
    if (!j.is_object()) schema_error(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema_error(child(ptr, key), "required field is missing");
    return *it;
}

inline std::vector<std::string> string_list(const Json& j, const std::string& ptr) {
    if (!j.is_array()) schema_error(ptr, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) schema_error(child(ptr, i), "expected a string");
        out.push_back(j[i].get<std::string>());
    }
    return out;
}

inline Rational rational_value(const Json& j, const std::string& ptr) {
    if (j.is_number_integer()) return make_rational(j.get<long long>());
    if (j.is_string()) {
        Rational r;
        std::string s = j.get<std::string>();
        if (s.empty() || s.find_first_not_of("+-0123456789/") != std::string::npos || r.set_str(s, 10) != 0 ||
            r.get_den() == 0)
            schema_error(ptr, "not a rational number: \"" + s + "\"");
        r.canonicalize();
        return r;
    }
    schema_error(ptr, "expected an integer or a rational string like \"-3/2\"");
}

inline Json rational_json(const Rational& r) {
    if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
    return r.get_str();
}

inline IntVector int_vector(const Json& j, const std::string& ptr) {
    if (!j.is_array()) schema_error(ptr, "expected an array of integers");
    IntVector v;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer()) schema_error(child(ptr, i), "expected an integer");
        v.push_back(j[i].get<long long>());
    }
    return v;
}

inline std::vector<Polynomial> polynomials(const Json& j, const Ring& ring, const std::string& ptr) {
    auto texts = string_list(j, ptr);
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        try {
            out.push_back(poly_parse(texts[i], ring));
        } catch (const ValidationError& e) {
            schema_error(child(ptr, i), e.what());
        }
    }
    return out;
}

inline void check_names(const std::vector<std::string>& names, const std::string& ptr) {
    if (names.empty()) schema_error(ptr, "at least one variable is required");
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto& n = names[i];
        bool ok = !n.empty() && (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_');
        for (char c : n) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ok) schema_error(child(ptr, i), "invalid variable name \"" + n + "\"");
        for (std::size_t k = 0; k < i; ++k)
            if (names[k] == n) schema_error(child(ptr, i), "duplicate variable name \"" + n + "\"");
    }
}

} // namespace detail

// Inline JSON (text starting with '{' or '[') or a file path.
inline Json load_json(const std::string& source) {
    std::string text = source;
    std::size_t first = source.find_first_not_of(" \t\r\n");
    bool inline_json = first != std::string::npos && (source[first] == '{' || source[first] == '[');
    if (!inline_json) {
        std::ifstream in(source);
        if (!in) throw ValidationError(source + ": cannot open file");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError((inline_json ? std::string("inline JSON") : source) + ": invalid JSON: " + e.what());
    }
}

inline VarietySpec spec_from_json(const Json& j) {
    if (!j.is_object()) detail::schema_error("", "expected an object");
    if (auto it = j.find("schema"); it != j.end() && *it != kSpecSchema)
        detail::schema_error("/schema", "unsupported schema, expected \"" + std::string(kSpecSchema) + "\"");
    const Json& kind = detail::field(j, "kind", "");
    if (!kind.is_string()) detail::schema_error("/kind", "expected a string");
    std::string k = kind.get<std::string>();
    if (k == "ideal") {
        auto vars = detail::string_list(detail::field(j, "variables", ""), "/variables");
        detail::check_names(vars, "/variables");
        Ring r(vars);
        auto gens = detail::polynomials(detail::field(j, "generators", ""), r, "/generators");
        return VarietySpec::from_ideal(Ideal(r, gens));
    }
    if (k == "parametrization") {
        auto params = detail::string_list(detail::field(j, "parameters", ""), "/parameters");
        detail::check_names(params, "/parameters");
        Ring r(params);
        auto fs = detail::polynomials(detail::field(j, "functions", ""), r, "/functions");
        if (fs.empty()) detail::schema_error("/functions", "at least one function is required");
        for (std::size_t i = 0; i < fs.size(); ++i)
            if (fs[i].is_zero()) detail::schema_error(detail::child("/functions", i), "function is identically zero");
        return VarietySpec::from_parametrization(r, fs);
    }
    if (k == "arrangement") {
        Arrangement a;
        a.variables = detail::string_list(detail::field(j, "variables", ""), "/variables");
        detail::check_names(a.variables, "/variables");
        const Json& m = detail::field(j, "matrix", "");
        if (!m.is_array() || m.empty()) detail::schema_error("/matrix", "expected a nonempty array of rows");
        for (std::size_t i = 0; i < m.size(); ++i) {
            std::string rp = detail::child("/matrix", i);
            if (!m[i].is_array() || m[i].size() != a.variables.size() + 1)
                detail::schema_error(rp, "expected a row of " + std::to_string(a.variables.size() + 1) +
                                             " numbers (coefficients, then the constant)");
            RationalVector row;
            for (std::size_t c = 0; c < m[i].size(); ++c) row.push_back(detail::rational_value(m[i][c], detail::child(rp, c)));
            a.rows.push_back(row);
        }
        if (auto it = j.find("projective_closure"); it != j.end()) {
            if (!it->is_boolean()) detail::schema_error("/projective_closure", "expected a boolean");
            a.projective_closure = it->get<bool>();
        }
        try {
            return VarietySpec::from_arrangement(a);
        } catch (const ValidationError& e) {
            detail::schema_error("/matrix", e.what());
        }
    }
    detail::schema_error("/kind", "must be one of \"ideal\", \"parametrization\", \"arrangement\"");
}

inline VarietySpec load_spec(const std::string& source) { return spec_from_json(load_json(source)); }

inline Json spec_to_json(const VarietySpec& s) {
    Json j;
    j["schema"] = kSpecSchema;
    j["kind"] = to_string(s.kind);
    auto strings = [](const std::vector<Polynomial>& ps, const Ring& r) {
        Json a = Json::array();
        for (const auto& p : ps) a.push_back(to_string(p, r));
        return a;
    };
    switch (s.kind) {
    case SpecKind::ideal:
        j["variables"] = s.ideal.ring.names();
        j["generators"] = strings(s.ideal.generators, s.ideal.ring);
        break;
    case SpecKind::parametrization:
        j["parameters"] = s.parameters.names();
        j["functions"] = strings(s.functions, s.parameters);
        break;
    case SpecKind::arrangement: {
        j["variables"] = s.arrangement.variables;
        Json m = Json::array();
        for (const auto& row : s.arrangement.rows) {
            Json r = Json::array();
            for (const auto& x : row) r.push_back(detail::rational_json(x));
            m.push_back(r);
        }
        j["matrix"] = m;
        j["projective_closure"] = s.arrangement.projective_closure;
        break;
    }
    }
    return j;
}

// {"components": ["2+t", "1+t", "-3/2"]} in the variable t, or a bare array.
inline DataCurve curve_from_json(const Json& j) {
    const Json& c = j.is_array() ? j : detail::field(j, "components", "");
    std::string ptr = j.is_array() ? "" : "/components";
    auto comps = detail::polynomials(c, Ring({"t"}), ptr);
    if (comps.empty()) detail::schema_error(ptr, "at least one component is required");
    return DataCurve{comps};
}

// {"source": ..., "factors": [{"normal": [...], "offsets": [...]}]}
inline BSFixture bs_fixture_from_json(const Json& j) {
    BSFixture f;
    if (auto it = j.find("source"); it != j.end() && it->is_string()) f.source = it->get<std::string>();
    const Json& fs = detail::field(j, "factors", "");
    if (!fs.is_array()) detail::schema_error("/factors", "expected an array");
    for (std::size_t i = 0; i < fs.size(); ++i) {
        std::string p = detail::child("/factors", i);
        BSFactor b;
        b.normal = detail::int_vector(detail::field(fs[i], "normal", p), detail::child(p, "normal"));
        if (is_zero(b.normal)) detail::schema_error(detail::child(p, "normal"), "normal must be nonzero");
        if (auto it = fs[i].find("offsets"); it != fs[i].end()) {
            if (!it->is_array()) detail::schema_error(detail::child(p, "offsets"), "expected an array");
            for (std::size_t k = 0; k < it->size(); ++k)
                b.offsets.push_back(detail::rational_value((*it)[k], detail::child(detail::child(p, "offsets"), k)));
        }
        f.factors.push_back(b);
    }
    return f;
}

struct Discrepancies {
    DiscrepancyMap k;
    std::vector<IntVector> rays;  // in file order
    std::string source;
};

// {"source": ..., "discrepancies": [{"ray": [...], "k": 1}]}
inline Discrepancies discrepancies_from_json(const Json& j) {
    Discrepancies d;
    if (auto it = j.find("source"); it != j.end() && it->is_string()) d.source = it->get<std::string>();
    const Json& ds = detail::field(j, "discrepancies", "");
    if (!ds.is_array()) detail::schema_error("/discrepancies", "expected an array");
    for (std::size_t i = 0; i < ds.size(); ++i) {
        std::string p = detail::child("/discrepancies", i);
        IntVector v = detail::int_vector(detail::field(ds[i], "ray", p), detail::child(p, "ray"));
        Rational k = detail::rational_value(detail::field(ds[i], "k", p), detail::child(p, "k"));
        if (k <= 0) detail::schema_error(detail::child(p, "k"), "discrepancy must be positive");
        d.k[v] = k;
        d.rays.push_back(v);
    }
    return d;
}

// Published input and output schemas (JSON Schema draft 2020-12).
inline Json schema_json() {
    Json str_array = {{"type", "array"}, {"items", {{"type", "string"}}}};
    Json rational = {{"oneOf", Json::array({{{"type", "integer"}}, {{"type", "string"}, {"pattern", "^[+-]?[0-9]+(/[0-9]+)?$"}}})}};
    Json int_array = {{"type", "array"}, {"items", {{"type", "integer"}}}};
    Json spec = {
        {"$id", kSpecSchema},
        {"type", "object"},
        {"required", {"kind"}},
        {"oneOf",
         Json::array({
             {{"properties", {{"kind", {{"const", "ideal"}}}, {"variables", str_array}, {"generators", str_array}}},
              {"required", {"kind", "variables", "generators"}}},
             {{"properties", {{"kind", {{"const", "parametrization"}}}, {"parameters", str_array}, {"functions", str_array}}},
              {"required", {"kind", "parameters", "functions"}}},
             {{"properties",
               {{"kind", {{"const", "arrangement"}}},
                {"variables", str_array},
                {"matrix", {{"type", "array"}, {"items", {{"type", "array"}, {"items", rational}}}}},
                {"projective_closure", {{"type", "boolean"}}}}},
              {"required", {"kind", "variables", "matrix"}}},
         })},
    };
    Json curve = {{"$id", "tropcrit/curve/1"},
                  {"type", "object"},
                  {"properties", {{"components", str_array}}},
                  {"required", {"components"}}};
    Json bs = {{"$id", "tropcrit/bs-fixture/1"},
               {"type", "object"},
               {"properties",
                {{"source", {{"type", "string"}}},
                 {"factors",
                  {{"type", "array"},
                   {"items",
                    {{"type", "object"},
                     {"properties", {{"normal", int_array}, {"offsets", {{"type", "array"}, {"items", rational}}}}},
                     {"required", {"normal"}}}}}}}},
               {"required", {"factors"}}};
    Json disc = {{"$id", "tropcrit/discrepancies/1"},
                 {"type", "object"},
                 {"properties",
                  {{"source", {{"type", "string"}}},
                   {"discrepancies",
                    {{"type", "array"},
                     {"items", {{"type", "object"}, {"properties", {{"ray", int_array}, {"k", rational}}}, {"required", {"ray", "k"}}}}}}}},
                 {"required", {"discrepancies"}}};
    Json tagged = {{"type", "object"}, {"required", {"value", "exact"}}};
    Json report = {
        {"$id", kReportSchema},
        {"type", "object"},
        {"required", {"schema", "version", "command", "seed", "options", "input", "warnings"}},
        {"properties",
         {{"rays", {{"type", "array"}}},
          {"slopes", {{"type", "array"}}},
          {"euler", {{"type", "object"}}},
          {"ml_degree", tagged},
          {"mle", {{"type", "object"}}},
          {"asymptotics", {{"type", "object"}}},
          {"bs_slopes", {{"type", "object"}}},
          {"lct", {{"type", "object"}}},
          {"warnings",
           {{"type", "array"},
            {"items",
             {{"type", "object"},
              {"properties",
               {{"code",
                 {{"enum",
                   {"bound-limited-search", "schoen-assumed", "approximate-coefficients", "user-discrepancies",
                    "branch-count-mismatch", "asymptotics", "mle-skipped", "lct-skipped"}}}},
                {"message", {{"type", "string"}}}}}}}}}}},
    };
    return {{"version", kVersion}, {"spec", spec}, {"curve", curve}, {"bs_fixture", bs}, {"discrepancies", disc}, {"report", report}};
}

struct JobConfig {
    std::string command = "report";
    VarietySpec spec;
    int bound = 2;
    int order = 8;
    int precision = 53;
    std::uint64_t seed = 20240601;
    std::size_t budget = 1'000'000;
    std::optional<DataCurve> curve;
    std::optional<BSFixture> bs_fixture;
    std::optional<Discrepancies> discrepancies;

    GroebnerOptions groebner() const { return GroebnerOptions{budget}; }

    void validate() const {
        static const std::vector<std::string> commands{"rigid-rays", "slopes", "euler", "mle",
                                                       "asymptotics", "bs-slopes", "lct", "report"};
        if (std::find(commands.begin(), commands.end(), command) == commands.end())
            throw ValidationError("unknown command \"" + command + "\"");
        if (bound < 1 || bound > 6) throw ValidationError("--bound must be between 1 and 6");
        if (order < 1 || order > 40) throw ValidationError("--order must be between 1 and 40");
        if (precision != 53 && precision != 64) throw ValidationError("--precision must be 53 or 64");
        if (budget == 0) throw ValidationError("--budget must be positive");
        if (command == "asymptotics" && !curve) throw ValidationError("asymptotics needs --curve");
    }
};

// Budget default, overridable through TROPCRIT_BUDGET.
inline std::size_t default_budget() {
    if (const char* s = std::getenv("TROPCRIT_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        throw ValidationError("TROPCRIT_BUDGET must be a positive integer");
    }
    return 1'000'000;
}

namespace detail {

inline Json tagged(const Json& value, bool exact) { return {{"value", value}, {"exact", exact}}; }

inline Json warning(const std::string& code, const std::string& msg) { return {{"code", code}, {"message", msg}}; }

inline std::string decimal(long double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

inline Json slope_json(const SlopeHyperplane& h, const std::vector<std::string>& names) {
    return {{"normal", h.normal}, {"form", to_string(h, names)}};
}

inline Json slopes_json(const std::vector<SlopeHyperplane>& hs, const std::vector<std::string>& names) {
    Json a = Json::array();
    for (const auto& h : hs) a.push_back(slope_json(h, names));
    return a;
}

inline Json branch_json(const BranchReport& b) {
    Json j;
    j["kind"] = b.kind;
    if (b.kind == "escaping") {
        j["ray"] = b.ray;
        j["chart_weight"] = b.chart_weight;
        j["transverse"] = b.transverse;
    }
    j["valuations"] = b.valuations;
    j["exact"] = b.exact;
    Json u = Json::object();
    for (std::size_t i = 0; i < b.unknown_names.size(); ++i) u[b.unknown_names[i]] = b.unknowns[i];
    j["coefficients"] = u;
    j["coordinates"] = b.coordinates;
    Json lead = Json::array();
    for (std::size_t i = 0; i < b.leading.size(); ++i) {
        std::string c = decimal(b.leading[i].real());
        if (b.leading[i].imag() != 0)
            c += (b.leading[i].imag() < 0 ? "-" : "+") + decimal(std::fabs(b.leading[i].imag())) + "i";
        lead.push_back({{"variable", b.unknown_names[i]}, {"order", b.leading_order[i]}, {"value", c}, {"exact", false}});
    }
    j["leading"] = lead;
    j["residual_order"] = b.residual_order;
    j["residual_history"] = b.residual_history;
    if (!b.exact) j["relative_residual"] = b.relative_residual;
    j["accepted"] = b.accepted;
    j["nonnegative"] = b.nonnegative();
    return j;
}

inline Json mle_json(const MLEFormula& f) {
    Json coords = Json::array();
    for (std::size_t i = 0; i < f.coordinates.size(); ++i) {
        Json factors = Json::array();
        for (const auto& x : f.coordinates[i].factors)
            factors.push_back({{"normal", x.normal}, {"form", f.form_string(x.normal)}, {"exponent", x.exponent}});
        coords.push_back({{"coordinate", f.coordinate_names[i]},
                          {"constant", rational_json(f.coordinates[i].constant)},
                          {"factors", factors},
                          {"formula", f.pretty(i)}});
    }
    Json sample = Json::array();
    for (const auto& x : f.sample) sample.push_back(rational_json(x));
    return {{"coordinates", coords}, {"sample", sample}, {"verified_samples", f.verified_samples}, {"exact", true}};
}

} // namespace detail

struct Report {
    Json json;
    std::vector<std::string> summary;  // human-readable lines (rendering of json)
};

// Runs one command. Every random choice is drawn from a Sampler seeded with
// cfg.seed, so the JSON is reproducible.
inline Report run_job(const JobConfig& cfg) {
    cfg.validate();
    const auto opt = cfg.groebner();
    const VarietySpec& spec = cfg.spec;
    Sampler rng(cfg.seed);
    Report rep;
    Json& j = rep.json;
    j["schema"] = kReportSchema;
    j["version"] = kVersion;
    j["command"] = cfg.command;
    j["seed"] = cfg.seed;
    j["options"] = {{"bound", cfg.bound}, {"order", cfg.order}, {"precision", cfg.precision}, {"budget", cfg.budget}};
    j["input"] = spec_to_json(spec);
    Json warnings = Json::array();
    const std::string& cmd = cfg.command;
    const bool all = cmd == "report";
    auto names = data_names(spec);

    Ideal X = torus_ideal(spec, opt);
    TropicalContext ctx(X, opt);
    std::vector<Ray> rays = find_rigid_rays(X, cfg.bound, opt);
    warnings.push_back(detail::warning("bound-limited-search", "rigid rays searched over primitive w with |w_i| <= " +
                                                                   std::to_string(cfg.bound)));
    if (cmd != "rigid-rays")
        warnings.push_back(detail::warning("schoen-assumed", "schoenness and connectedness of boundary strata are assumed, not verified"));
    {
        Json a = Json::array();
        for (const auto& r : rays) a.push_back({{"vector", r.v}, {"rigid", r.rigid}, {"source", to_string(r.source)}});
        j["rays"] = a;
        std::string line = "rigid rays:";
        for (const auto& r : rays) line += " " + to_string(r.v);
        rep.summary.push_back(line);
    }
    auto slopes = critical_slopes(rays);
    if (cmd != "rigid-rays") {
        j["slopes"] = detail::slopes_json(slopes, names);
        std::string line = "critical slopes:";
        for (const auto& h : slopes) line += " {" + to_string(h, names) + " = 0}";
        rep.summary.push_back(line);
    }
    std::vector<IntVector> normals;
    for (const auto& h : slopes) normals.push_back(h.normal);

    if (cmd == "euler" || all) {
        std::vector<long long> chis;
        IntVector total = weighted_ray_sum(ctx, rays, rng, &chis);
        Json a = Json::array();
        for (std::size_t i = 0; i < rays.size(); ++i)
            a.push_back({{"ray", rays[i].v}, {"chi", detail::tagged(chis[i], true)}});
        j["euler"] = {{"strata", a}, {"weighted_sum", total}};
        rep.summary.push_back("weighted ray sum: " + to_string(total));
    }
    std::optional<MLDegreeResult> ml;
    if (cmd == "mle" || cmd == "asymptotics" || all) {
        ml = ml_degree(spec, rng, Formulation::automatic, normals, opt);
        Json sample = Json::array();
        for (const auto& x : ml->alpha) sample.push_back(detail::rational_json(x));
        j["ml_degree"] = {{"value", ml->degree}, {"exact", true}, {"sample", sample}, {"formulation", to_string(ml->formulation)}};
        rep.summary.push_back("ML degree: " + std::to_string(ml->degree));
    }
    if (cmd == "mle" || (all && ml && ml->degree == 1)) {
        auto f = mle_closed_form(spec, rays, rng, 20, opt);
        j["mle"] = detail::mle_json(f);
        for (std::size_t i = 0; i < f.coordinates.size(); ++i)
            rep.summary.push_back("psi_" + f.coordinate_names[i] + " = " + f.pretty(i));
    } else if (all) {
        warnings.push_back(detail::warning("mle-skipped", "ML degree is not 1; no closed-form estimator"));
    }
    if (cmd == "asymptotics" || (all && cfg.curve)) {
        AsymptoticsOptions aopt;
        aopt.order = cfg.order;
        aopt.precision = cfg.precision;
        aopt.groebner = opt;
        validate_curve(*cfg.curve, spec.ambient_dim(), slopes, rng);
        auto a = asymptotics(spec, *cfg.curve, rays, rng, aopt);
        Json bs = Json::array();
        bool approx = false;
        for (const auto& b : a.branches) {
            bs.push_back(detail::branch_json(b));
            approx = approx || !b.exact;
            rep.summary.push_back(b.kind + " branch, valuations " + to_string(b.valuations) + (b.exact ? " (exact)" : ""));
        }
        Json limit = Json::array();
        for (const auto& x : a.limit) limit.push_back(detail::rational_json(x));
        j["asymptotics"] = {{"curve", cfg.curve->to_string()}, {"limit", limit}, {"branches", bs},
                            {"branch_count", a.branches.size()}, {"ml_degree", a.ml_degree}};
        if (approx) warnings.push_back(detail::warning("approximate-coefficients", "some branches have floating-point coefficients"));
        if (a.branches.size() != a.ml_degree)
            warnings.push_back(detail::warning("branch-count-mismatch", std::to_string(a.branches.size()) +
                                                                            " branches found for ML degree " +
                                                                            std::to_string(a.ml_degree)));
        for (const auto& w : a.warnings) warnings.push_back(detail::warning("asymptotics", w));
    }
    if (cmd == "bs-slopes" || all) {
        const BSFixture* fx = cfg.bs_fixture ? &*cfg.bs_fixture : nullptr;
        auto b = bs_slope_intersection(rays, fx);
        Json o = {{"intersection_with_SF", detail::slopes_json(b.intersection_with_SF, names)},
                  {"sf_only", detail::slopes_json(b.sf_only, names)}};
        if (fx) {
            o["fixture_source"] = fx->source;
            o["bs_slope_hyperplanes"] = detail::slopes_json(b.bs_slope_hyperplanes, names);
            o["bs_only"] = detail::slopes_json(b.bs_only, names);
            o["consistent"] = b.consistent;
        }
        j["bs_slopes"] = o;
        std::string line = "S_F meets BS_G in:";
        for (const auto& h : b.intersection_with_SF) line += " {" + to_string(h, names) + " = 0}";
        rep.summary.push_back(line);
    }
    if (cmd == "lct" || all) {
        bool arrangement = spec.kind == SpecKind::arrangement;
        if (!arrangement && !cfg.discrepancies) {
            if (cmd == "lct") throw PreconditionError("lct needs --k with discrepancies for non-arrangement inputs");
            warnings.push_back(detail::warning("lct-skipped", "no discrepancies supplied"));
        } else {
            const BSFixture* fx = cfg.bs_fixture ? &*cfg.bs_fixture : nullptr;
            DiscrepancyMap k;
            std::vector<IntVector> lr;
            if (cfg.discrepancies) {
                k = cfg.discrepancies->k;
                lr = cfg.discrepancies->rays;
            }
            auto entries = conjecture_check(spec, rays, k, lr, fx);
            Json a = Json::array();
            for (const auto& e : entries) {
                Json x = {{"ray", e.ray},
                          {"k", detail::rational_json(e.k)},
                          {"k_source", e.verified_k ? "rank" : (cfg.discrepancies ? cfg.discrepancies->source : "user")},
                          {"facet_defining", e.facet},
                          {"all_entries_nonzero", e.all_nonzero}};
                if (e.translate_in_fixture) x["translate_in_fixture"] = *e.translate_in_fixture;
                a.push_back(x);
                rep.summary.push_back("ray " + to_string(e.ray) + ": " + (e.facet ? "facet-defining" : "not facet-defining"));
            }
            j["lct"] = {{"entries", a}, {"verified_k", arrangement}};
            if (!arrangement)
                warnings.push_back(detail::warning("user-discrepancies", "discrepancies are user-supplied and unverified"));
        }
    }
    j["warnings"] = warnings;
    return rep;
}

} // namespace tropcrit

#endif
