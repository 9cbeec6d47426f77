#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "horolab/experiment.hpp"
#include "horolab/report.hpp"

using namespace horolab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path d = fs::temp_directory_path() / ("horolab_test_" + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("report primitives") {
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
    // round-trip formatting
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");

    Report r;
    r.experiment = "unit";
    r.add("close", 1.0 + 1e-10, 1.0, 1e-9);
    r.add("far", 2.0, 1.0, 1e-9);
    r.add_margin("ok_margin", 0.5, 1e-8);
    r.add_margin("slightly_negative", -1e-9, 1e-8);
    r.add_margin("too_negative", -1e-3, 1e-8);
    CHECK(r.passed() == 3);
    CHECK(r.failed() == 2);
    CHECK_FALSE(r.all_pass());

    const auto j = r.to_json();
    CHECK(j.at("summary").at("checks").get<int>() == 5);
    CHECK(j.at("summary").at("passed").get<int>() == 3);
    CHECK_FALSE(j.at("summary").at("pass").get<bool>());
    CHECK(j.at("checks").size() == 5);
}

TEST_CASE("report files: JSON plus RFC-4180 CSV") {
    const fs::path dir = fresh_dir("report");
    Report r;
    r.experiment = "unit";
    r.config_echo = "{}";
    r.add("x", 1.0, 1.0, 1e-9);
    r.tables.push_back({"tbl", {"r", "v"}, {{1.0, 0.5}, {2.0, 0.25}}});
    const auto files = r.write(dir.string(), "unit");
    REQUIRE(files.size() == 2);
    CHECK(fs::exists(dir / "unit.report.json"));
    const std::string csv = slurp((dir / "unit.tbl.csv").string());
    CHECK(csv == "r,v\r\n1,0.5\r\n2,0.25\r\n");
}

TEST_CASE("profile resolution") {
    const ResolvedProfile rh3 = resolve_profile("RH3");
    CHECK(rh3.label == "RH3");
    CHECK(rh3.profile.n == 2);
    CHECK(rh3.h == doctest::Approx(1.0));
    CHECK(rh3.tau_oracle == doctest::Approx(0.25));

    const ResolvedProfile ch2 = resolve_profile({{"builtin", "CH2"}, {"scale", 2.0}});
    CHECK(ch2.label == "CH2_a2");
    CHECK(ch2.h == doctest::Approx(8.0 / 3.0));

    const ResolvedProfile hh2 = resolve_profile("HH2");
    CHECK(hh2.profile.n == 7);
    CHECK(hh2.tau_oracle == doctest::Approx(1.0 / 1024));

    const ResolvedProfile syn = resolve_profile({{"n", 1},
                                                 {"entries", {"1 + 0.25*(1 + tanh(t))"}},
                                                 {"a", 1.0},
                                                 {"b", 1.3},
                                                 {"label", "syn"}});
    CHECK(syn.label == "syn");
    CHECK_FALSE(syn.is_ross);
    CHECK(syn.h > 0.9);
    CHECK(syn.h < 1.3);

    CHECK_THROWS_AS(resolve_profile("XH9"), ConfigError);
    CHECK_THROWS_AS(resolve_profile({{"builtin", "RH3"}, {"scale", -1.0}}), ConfigError);
    CHECK_THROWS_AS(resolve_profile({{"n", 1}, {"entries", {"0.1"}}, {"a", 1.0}, {"b", 2.0}}),
                    ConfigError);  // declared pinch violated
}

TEST_CASE("surface resolution") {
    CHECK(resolve_surface("pinched").b == doctest::Approx(2.0));
    CHECK(resolve_surface({{"builtin", "hyperbolic"}, {"scale", 0.5}}).a ==
          doctest::Approx(0.5));
    CHECK_THROWS_AS(resolve_surface("torus"), ConfigError);
    CHECK_THROWS_AS(resolve_surface({{"f", "r +"}, {"a", 1.0}, {"b", 2.0}}), ConfigError);
}

TEST_CASE("builtin catalog") {
    const auto cat = builtins_catalog();
    std::vector<std::string> names;
    for (const auto& p : cat.at("profiles")) names.push_back(p.at("name"));
    for (const char* want : {"RH2", "CH2", "HH2", "OH2"})
        CHECK(std::find(names.begin(), names.end(), want) != names.end());
    bool pinched = false;
    for (const auto& s : cat.at("surfaces")) pinched |= (s.at("name") == "pinched");
    CHECK(pinched);
    CHECK(cat.at("experiments").size() == 9);
}

TEST_CASE("config validation") {
    const fs::path dir = fresh_dir("cfg");
    CHECK_THROWS_AS(run_experiment(nlohmann::json::array(), dir.string()), ConfigError);
    CHECK_THROWS_AS(run_experiment({{"experiment", "frobnicate"}}, dir.string()), ConfigError);
    CHECK_THROWS_AS(run_experiment({{"name", "x"}}, dir.string()), ConfigError);
    CHECK_THROWS_AS(run_experiment({{"experiment", "tau"},
                                    {"profiles", {"RH2"}},
                                    {"tolerances", {{"tau_rel", -1.0}}}},
                                   dir.string()),
                    ConfigError);
    CHECK_THROWS_AS(run_experiment({{"experiment", "measures"}, {"trials", -3}}, dir.string()),
                    ConfigError);
    CHECK_THROWS_AS(run_experiment({{"experiment", "tau"}, {"seed", -1}}, dir.string()),
                    ConfigError);
}

TEST_CASE("experiment runs and reruns are bit-identical") {
    const nlohmann::json cfg = {
        {"experiment", "tau"}, {"profiles", {"RH2"}}, {"name", "t1"}, {"seed", 42}};
    const fs::path d1 = fresh_dir("det1"), d2 = fresh_dir("det2");
    const RunResult r1 = run_experiment(cfg, d1.string());
    const RunResult r2 = run_experiment(cfg, d2.string());
    CHECK(r1.report.all_pass());
    REQUIRE(r1.files.size() == r2.files.size());
    for (std::size_t i = 0; i < r1.files.size(); ++i)
        CHECK(slurp(r1.files[i]) == slurp(r2.files[i]));

    // the seed override is reflected in the provenance and the echo
    const RunResult r3 = run_experiment(cfg, d2.string(), 7);
    CHECK(r3.report.seed == 7);
    CHECK(r3.report.config_hash != r1.report.config_hash);
}

TEST_CASE("measures experiment end to end") {
    const fs::path dir = fresh_dir("measures");
    const nlohmann::json cfg = {
        {"experiment", "measures"}, {"dimension", 3}, {"trials", 10}, {"seed", 1}};
    const RunResult r = run_experiment(cfg, dir.string());
    CHECK(r.report.all_pass());
    CHECK(fs::exists(dir / "measures.report.json"));
    CHECK(fs::exists(dir / "measures.deviations.csv"));
}

TEST_CASE("acceptance suite configuration") {
    const auto cfgs = acceptance_configs(123);
    CHECK(cfgs.size() == 11);
    for (const auto& c : cfgs) {
        CHECK(c.at("seed").get<std::uint64_t>() == 123);
        CHECK(c.contains("experiment"));
        CHECK(c.contains("name"));
    }
}
