// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
//
// Criteria 2-14 are evaluated against the reports produced by one run of the
// full experiment suite; criterion 1 gets its own timed computation and
// criterion 15 reruns the whole suite and compares every output byte.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "horolab/experiment.hpp"
#include "horolab/jacobi.hpp"

using namespace horolab;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void criterion(int num, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", num, detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// every check whose name contains `substr` passes, and there are >= min_count
bool checks_pass(const Report& r, const std::string& substr, int min_count) {
    int n = 0;
    bool ok = true;
    for (const auto& c : r.checks)
        if (c.name.find(substr) != std::string::npos) {
            ++n;
            ok = ok && c.pass;
        }
    return ok && n >= min_count;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "<missing:" + path.string() + ">";
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fmt(const char* pattern, double v) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

}  // namespace

int main() {
    const auto t_total = Clock::now();
    const std::uint64_t seed = kDefaultSeed;
    const fs::path dir_a = fs::temp_directory_path() / "horolab_acceptance_a";
    const fs::path dir_b = fs::temp_directory_path() / "horolab_acceptance_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);

    // criterion 1: dual-method asymptotic density, timed on its own
    {
        const auto t0 = Clock::now();
        bool ok = true;
        double worst = 0.0;
        for (const auto& rp : suite_profiles()) {
            const double r_max = 40.0 / rp.profile.a;
            const AsymptoticDensity td = tau_from_tensors(rp.profile, r_max);
            const AsymptoticDensity tl = tau_from_limit(rp.profile, rp.h, r_max);
            const double rel = std::abs(td.tau - tl.tau) / td.tau;
            const double dev = std::abs(td.tau - rp.tau_oracle) / rp.tau_oracle;
            worst = std::max(worst, std::max(rel, dev));
            ok = ok && rel <= 1e-8 && dev <= 1e-8;
        }
        const double dt = seconds_since(t0);
        criterion(1, ok && dt <= 10.0,
                  "dual-method density agreement and closed forms, 12 profiles (worst rel " +
                      fmt("%.2e", worst) + ", " + fmt("%.1f s", dt) + ", limit 10 s)");
    }

    // one full suite run, individually timed; this is pass A of criterion 15
    std::map<std::string, Report> rep;
    std::map<std::string, double> secs;
    std::vector<std::string> rel_files;
    try {
        for (const auto& cfg : acceptance_configs(seed)) {
            const auto t0 = Clock::now();
            RunResult r = run_experiment(cfg, dir_a.string());
            secs[r.name] = seconds_since(t0);
            for (const auto& f : r.files)
                rel_files.push_back(fs::path(f).filename().string());
            rep[r.name] = std::move(r.report);
        }
    } catch (const std::exception& e) {
        std::printf("[FAIL] suite run aborted: %s\n", e.what());
        return 1;
    }

    criterion(2, checks_pass(rep["tau-suite"], ".density_envelope", 12),
              "scaled volume density within its convergence envelope on r in [0.5, 40], "
              "12 profiles, slack 1e-10");
    criterion(3,
              checks_pass(rep["tau-suite"], ".mean_curvature_lower", 12) &&
                  checks_pass(rep["tau-suite"], ".mean_curvature_upper", 12),
              "sphere mean curvature between h and h + 1/r on r in [0.1, 40], tol 1e-7");
    criterion(4, checks_pass(rep["riccati-suite"], ".riccati_jacobi_gap", 12),
              "Riccati flow matches J' J^-1 to 1e-6 on t in [0.1, 20], 12 profiles");
    criterion(5, checks_pass(rep["entropy-suite"], ".entropy_slope", 12),
              "log ball-volume slope within 1% of n h on the window [10/a, 30/a]");
    criterion(6,
              checks_pass(rep["margulis-suite"], ".scaled_sphere_envelope", 12) &&
                  checks_pass(rep["margulis-suite"], ".ball_limit", 12) &&
                  checks_pass(rep["margulis-suite"], "RH3.sphere_limit_closed_form", 1),
              "scaled sphere volume within m eps(r) for r >= 1; dim-3 constant-curvature "
              "limit pi to 1e-6; ball limit m/(nh) to 1e-6");
    criterion(7, checks_pass(rep["entropy-suite"], ".isoperimetric", 12),
              "n h vol B(r) <= vol S(r) at all grid radii, relative slack 1e-8");
    criterion(8,
              checks_pass(rep["rigidity-suite"], ".norm_identity", 12) &&
                  checks_pass(rep["rigidity-suite"], ".ricci_lower", 12) &&
                  checks_pass(rep["rigidity-suite"], ".ricci_upper", 12) &&
                  checks_pass(rep["rigidity-suite"], ".equality_flag", 12),
              "Ricci bounds, |A|^2 + Ric = 0 to 1e-8, equality case flagged exactly on "
              "constant curvature");
    {
        const double dt = secs["comparison-pinched"] + secs["tangency-pinched"];
        criterion(9,
                  checks_pass(rep["comparison-pinched"], "triangle_violations", 1) &&
                      checks_pass(rep["comparison-pinched"], "triangle_worst_margin", 1) &&
                      checks_pass(rep["tangency-pinched"], "tangent_violations", 1) &&
                      checks_pass(rep["tangency-pinched"], "tangent_worst_margin", 1) &&
                      dt <= 120.0,
                  "200 triangles x 3 split ratios and 100 tangent circle pairs on the pinched "
                  "surface, zero violations at slack 1e-6 (" + fmt("%.1f s", dt) +
                      ", limit 120 s)");
    }
    criterion(10,
              checks_pass(rep["comparison-hyperbolic"], "triangle_equality", 1) &&
                  checks_pass(rep["tangency-hyperbolic"], "tangent_equality", 1) &&
                  checks_pass(rep["tangency-hyperbolic"], "horocurvature_value", 1),
              "comparison inequalities are equalities to 1e-8 on constant curvature");
    criterion(11,
              checks_pass(rep["tangency-pinched"], "horocurvature_spread_exceeds", 1) &&
                  checks_pass(rep["tangency-pinched"], "horocurvature_in_pinch", 1) &&
                  checks_pass(rep["rigidity-suite"], ".h_constancy", 12),
              "horocycle curvature spread > 1e-2 on the pinched surface; h constant to 1e-9 "
              "on every symmetric-space profile");
    criterion(12,
              checks_pass(rep["measures-dim3"], "poisson_power_ratio", 1) &&
                  checks_pass(rep["measures-dim3"], "visual_jacobian_limit", 1) &&
                  checks_pass(rep["measures-dim3"], "cocycle_identity", 1),
              "harmonic density = Poisson power to 1e-10 at 100 samples; visual ratio at "
              "t = 30 within 1e-4; cocycle identity to 1e-12");
    criterion(13,
              checks_pass(rep["meanvalue-plane"], "best_mean_deviation", 3) &&
                  checks_pass(rep["meanvalue-plane"], "residual_trend", 3),
              "3 boundary bumps: best horocycle-ball mean within 5e-2 of the boundary value, "
              "flow residual decreasing over the last three radius doublings");
    criterion(14,
              checks_pass(rep["entropy-suite"], ".growth_degree_int", 4) &&
                  checks_pass(rep["entropy-suite"], ".growth_degree", 4),
              "horosphere growth degree n h / a = (n - d) + 2d, exact integers, all four "
              "families");

    // criterion 15: a second full suite run must be byte-identical
    {
        bool ok = true;
        try {
            verify_all(dir_b.string(), seed);
        } catch (const std::exception& e) {
            std::printf("  rerun aborted: %s\n", e.what());
            ok = false;
        }
        std::size_t compared = 0;
        for (const auto& f : rel_files) {
            if (slurp(dir_a / f) != slurp(dir_b / f)) {
                std::printf("  differs: %s\n", f.c_str());
                ok = false;
            }
            ++compared;
        }
        criterion(15, ok && compared > 0,
                  "full suite rerun with the same seed is bit-identical (" +
                      std::to_string(compared) + " files compared)");
    }

    const int criteria_failed = failures;

    // every suite report must be clean overall, not just the cited checks
    bool suite_ok = true;
    for (const auto& [name, r] : rep)
        if (!r.all_pass()) {
            suite_ok = false;
            std::printf("[FAIL] suite report %s has failing checks\n", name.c_str());
            for (const auto& c : r.checks)
                if (!c.pass)
                    std::printf("  %s residual=%g bound=%g\n", c.name.c_str(), c.residual,
                                c.bound);
        }
    if (!suite_ok) ++failures;

    std::printf("%d/15 criteria passed, total %.1f s\n", 15 - criteria_failed,
                seconds_since(t_total));
    return failures == 0 ? 0 : 1;
}
