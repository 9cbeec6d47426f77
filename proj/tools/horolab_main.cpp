// horolab command line: config-driven experiments on negatively curved
// model geometries. Exit codes: 0 all checks pass, 1 check failure,
// 2 config error, 3 numeric error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "horolab/experiment.hpp"

namespace {

using horolab::RunStatus;

int code(RunStatus s) { return static_cast<int>(s); }

void print_summary(const horolab::RunResult& r) {
    std::cout << (r.report.all_pass() ? "[PASS] " : "[FAIL] ") << r.name << ": "
              << r.report.passed() << "/" << r.report.checks.size() << " checks passed"
              << " (worst residual " << horolab::format_double(r.report.worst_residual())
              << ")\n";
    for (const auto& c : r.report.checks)
        if (!c.pass)
            std::cout << "  failed: " << c.name << " computed="
                      << horolab::format_double(c.computed)
                      << " oracle=" << horolab::format_double(c.oracle)
                      << " residual=" << horolab::format_double(c.residual)
                      << " bound=" << horolab::format_double(c.bound) << "\n";
    for (const auto& f : r.files) std::cout << "  wrote " << f << "\n";
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            const std::string& out_dir, bool as_json) {
    nlohmann::json config;
    {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "config error: cannot open " << config_path << "\n";
            return code(RunStatus::InvalidConfig);
        }
        try {
            in >> config;
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return code(RunStatus::InvalidConfig);
        }
    }
    try {
        const horolab::RunResult r = horolab::run_experiment(config, out_dir, seed);
        if (as_json)
            std::cout << r.report.to_json().dump(2) << "\n";
        else
            print_summary(r);
        return code(r.report.all_pass() ? RunStatus::Pass : RunStatus::CheckFailure);
    } catch (const horolab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return code(RunStatus::InvalidConfig);
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return code(RunStatus::NumericFailure);
    }
}

int cmd_verify_all(std::uint64_t seed, const std::string& out_dir) {
    try {
        bool ok = true;
        for (const auto& r : horolab::verify_all(out_dir, seed)) {
            print_summary(r);
            ok = ok && r.report.all_pass();
        }
        return code(ok ? RunStatus::Pass : RunStatus::CheckFailure);
    } catch (const horolab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return code(RunStatus::InvalidConfig);
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return code(RunStatus::NumericFailure);
    }
}

int cmd_list_builtins(bool as_json) {
    const nlohmann::json cat = horolab::builtins_catalog();
    if (as_json) {
        std::cout << cat.dump(2) << "\n";
        return 0;
    }
    for (const char* section : {"profiles", "surfaces", "experiments"}) {
        std::cout << section << ":\n";
        for (const auto& item : cat.at(section))
            std::cout << "  " << item.at("name").get<std::string>() << " - "
                      << item.at("description").get<std::string>() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"experiments on negatively curved model geometries"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    std::uint64_t seed_value = horolab::kDefaultSeed;
    bool json_flag = false;

    auto* run = app.add_subcommand("run", "run one experiment from a JSON config");
    run->add_option("config", config_path, "path to the experiment config")->required();
    auto* seed_opt = run->add_option("--seed", seed_value, "override the config seed");
    run->add_option("--out", out_dir, "report output directory (default: out)");
    run->add_flag("--json", json_flag, "print the full report JSON to stdout");

    auto* verify = app.add_subcommand("verify-all", "run the full acceptance suite");
    verify->add_option("--seed", seed_value, "suite seed");
    verify->add_option("--out", out_dir, "report output directory (default: out)");

    auto* list = app.add_subcommand("list-builtins",
                                    "print builtin profiles, surfaces and experiments");
    list->add_flag("--json", json_flag, "machine-readable catalog");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed())
        return cmd_run(config_path,
                       seed_opt->count() ? std::optional<std::uint64_t>(seed_value)
                                         : std::nullopt,
                       out_dir, json_flag);
    if (verify->parsed()) return cmd_verify_all(seed_value, out_dir);
    return cmd_list_builtins(json_flag);
}
