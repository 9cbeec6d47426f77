#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "horolab/profile.hpp"
#include "horolab/report.hpp"
#include "horolab/surface.hpp"

namespace horolab {

/// A problem with the experiment configuration itself (unknown experiment
/// kind, missing builtin, non-positive tolerance, non-increasing grid, ...).
/// Distinguished from numeric failures for exit-code purposes.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exit codes of the CLI `run` / `verify-all` commands.
enum class RunStatus : int {
    Pass = 0,
    CheckFailure = 1,
    InvalidConfig = 2,
    NumericFailure = 3,
};

/// Seed used when neither the config nor the command line supplies one.
inline constexpr std::uint64_t kDefaultSeed = 20240801;

/// A curvature profile resolved from a config spec, together with the exact
/// data available for built-ins (closed-form h and tau, growth degree).
struct ResolvedProfile {
    std::string label;
    CurvatureProfile profile;
    double h = -1.0;           // exact mean curvature when known, else derived
    double tau_oracle = -1.0;  // closed form for built-ins, else -1
    bool is_ross = false;
    RossProfile ross;
};

/// Resolve a profile spec: a builtin name ("RH2".."RH8", "CH2", "CH3",
/// "HH2", "OH2"), an object {"builtin": name, "scale": a}, or a synthetic
/// diagonal {"n":…, "entries":[expr…], "a":…, "b":…, "label":…}.
ResolvedProfile resolve_profile(const nlohmann::json& spec);

/// Resolve a surface spec: "hyperbolic", "pinched", {"builtin":"hyperbolic",
/// "scale":a}, or {"f": expr-in-r, "a":…, "b":…, "name":…}.
WarpedSurface resolve_surface(const nlohmann::json& spec);

/// The profile set every suite experiment defaults to: RH2..RH4 at scales
/// 0.5, 1, 2 plus CH2, HH2, OH2 at scale 1.
std::vector<ResolvedProfile> suite_profiles();

/// Machine-readable catalog of builtin profiles, surfaces and experiments.
nlohmann::json builtins_catalog();

struct RunResult {
    std::string name;
    Report report;
    std::vector<std::string> files;
};

/// Validate the config, run the experiment it names, and write the report
/// (JSON + CSV tables + SVG plots) into out_dir. The seed override, when
/// present, wins over the config's "seed". Throws ConfigError for bad
/// configs; numeric failures propagate as the underlying exceptions.
RunResult run_experiment(const nlohmann::json& config, const std::string& out_dir,
                         std::optional<std::uint64_t> seed_override = {});

/// The full acceptance suite as a list of ready-to-run configs.
std::vector<nlohmann::json> acceptance_configs(std::uint64_t seed);

/// Run the whole acceptance suite into out_dir; reports are deterministic
/// given the seed (bit-identical reruns).
std::vector<RunResult> verify_all(const std::string& out_dir,
                                  std::uint64_t seed = kDefaultSeed);

}  // namespace horolab
