// tropcrit <command> [--spec F] [--bound N] [--order N] [--seed S] [--out F]
//          [--budget N] [--precision BITS] [--curve F] [--bs-fixture F] [--k F]
// tropcrit --schema
//
// Exit codes: 0 ok, 1 internal, 2 validation, 3 resource, 4 degenerate sample,
// 5 precondition, 6 numerical.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tropcrit/io.hpp"

namespace {

int run(int argc, char** argv) {
    using namespace tropcrit;
    CLI::App app{"Critical slopes, ML estimators and asymptotics of very affine varieties"};
    app.set_version_flag("--version", std::string(kVersion));

    std::string command, spec_source, out, curve_file, bs_file, k_file;
    JobConfig cfg;
    bool schema = false;
    long long budget = -1;

    app.add_option("command", command, "rigid-rays | slopes | euler | mle | asymptotics | bs-slopes | lct | report");
    app.add_option("--spec", spec_source, "variety spec: JSON file or inline JSON");
    app.add_option("--bound", cfg.bound, "ray search box |w_i| <= N (1..6)")->capture_default_str();
    app.add_option("--order", cfg.order, "series truncation order (1..40)")->capture_default_str();
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--out", out, "write the JSON report here instead of stdout");
    app.add_option("--budget", budget, "Groebner step budget (default: TROPCRIT_BUDGET or 1000000)");
    app.add_option("--precision", cfg.precision, "floating precision in bits: 53 or 64")->capture_default_str();
    app.add_option("--curve", curve_file, "data curve JSON for asymptotics");
    app.add_option("--bs-fixture", bs_file, "external Bernstein-Sato factors JSON");
    app.add_option("--k", k_file, "discrepancies JSON for lct on non-arrangement inputs");
    app.add_flag("--schema", schema, "print the input and report schemas and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_code(ErrorKind::validation);
    }

    try {
        if (schema) {
            std::cout << schema_json().dump(2) << "\n";
            return 0;
        }
        if (command.empty()) throw ValidationError("missing command; see --help");
        if (spec_source.empty()) throw ValidationError("--spec is required");
        cfg.command = command;
        cfg.spec = load_spec(spec_source);
        cfg.budget = budget > 0 ? static_cast<std::size_t>(budget) : default_budget();
        if (budget == 0 || budget < -1) throw ValidationError("--budget must be positive");
        if (!curve_file.empty()) cfg.curve = curve_from_json(load_json(curve_file));
        if (!bs_file.empty()) cfg.bs_fixture = bs_fixture_from_json(load_json(bs_file));
        if (!k_file.empty()) cfg.discrepancies = discrepancies_from_json(load_json(k_file));

        Report rep = run_job(cfg);
        std::string text = rep.json.dump(2) + "\n";
        if (out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out, std::ios::binary);
            if (!f) throw ValidationError(out + ": cannot write");
            f << text;
        }
        for (const auto& line : rep.summary) std::cerr << line << "\n";
        for (const auto& w : rep.json["warnings"])
            std::cerr << "warning [" << w["code"].get<std::string>() << "]: " << w["message"].get<std::string>() << "\n";
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
