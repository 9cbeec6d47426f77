#include "horolab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "horolab/asymptotics.hpp"
#include "horolab/ballmodel.hpp"
#include "horolab/jacobi.hpp"

namespace horolab {

namespace {

using nlohmann::json;

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

double positive_number(const json& j, const std::string& what) {
    if (!j.is_number()) throw ConfigError(what + " must be a number");
    const double v = j.get<double>();
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(what + " must be positive");
    return v;
}

double tol_of(const json& cfg, const char* key, double dflt) {
    if (!cfg.contains("tolerances")) return dflt;
    const json& t = cfg.at("tolerances");
    if (!t.is_object()) throw ConfigError("tolerances must be an object");
    if (!t.contains(key)) return dflt;
    return positive_number(t.at(key), std::string("tolerances.") + key);
}

double opt_of(const json& cfg, const char* key, double dflt) {
    if (!cfg.contains(key)) return dflt;
    return positive_number(cfg.at(key), key);
}

// grid spec {"lo":…, "hi":…, "step":…}; strictly increasing by construction
std::vector<double> grid_of(const json& cfg, const char* key, double lo, double hi, double step) {
    if (cfg.contains(key)) {
        const json& g = cfg.at(key);
        if (!g.is_object()) throw ConfigError(std::string(key) + " must be an object");
        lo = positive_number(g.at("lo"), std::string(key) + ".lo");
        hi = positive_number(g.at("hi"), std::string(key) + ".hi");
        step = positive_number(g.at("step"), std::string(key) + ".step");
        if (!(lo < hi)) throw ConfigError(std::string(key) + ": lo must be < hi");
    }
    std::vector<double> out;
    for (double r = lo; r < hi + step * 0.5; r += step) out.push_back(std::min(r, hi));
    if (out.back() < hi) out.push_back(hi);
    return out;
}

// deterministic uniforms straight from the engine output (distribution
// classes are implementation-defined, which would break report determinism)
struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}
    double u() { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
    double u(double lo, double hi) { return lo + (hi - lo) * u(); }
};

struct BuiltinProfile {
    const char* name;
    RossFamily family;
    int real_dimension;
    const char* description;
};

constexpr BuiltinProfile kBuiltinProfiles[] = {
    {"RH2", RossFamily::Real, 2, "real hyperbolic plane, constant curvature -a^2"},
    {"RH3", RossFamily::Real, 3, "real hyperbolic 3-space"},
    {"RH4", RossFamily::Real, 4, "real hyperbolic 4-space"},
    {"RH5", RossFamily::Real, 5, "real hyperbolic 5-space"},
    {"RH6", RossFamily::Real, 6, "real hyperbolic 6-space"},
    {"RH7", RossFamily::Real, 7, "real hyperbolic 7-space"},
    {"RH8", RossFamily::Real, 8, "real hyperbolic 8-space"},
    {"CH2", RossFamily::Complex, 4, "complex hyperbolic plane (real dimension 4)"},
    {"CH3", RossFamily::Complex, 6, "complex hyperbolic 3-space (real dimension 6)"},
    {"CH4", RossFamily::Complex, 8, "complex hyperbolic 4-space (real dimension 8)"},
    {"HH2", RossFamily::Quaternionic, 8, "quaternionic hyperbolic plane (real dimension 8)"},
    {"HH3", RossFamily::Quaternionic, 12, "quaternionic hyperbolic 3-space (real dimension 12)"},
    {"OH2", RossFamily::Octonionic, 16, "octonionic hyperbolic plane (real dimension 16)"},
};

ResolvedProfile from_ross(const std::string& base, const RossProfile& ross) {
    ResolvedProfile out;
    out.is_ross = true;
    out.ross = ross;
    out.profile = make_ross_profile(ross);
    out.label = ross.scale == 1.0 ? base : base + "_a" + fmt_g(ross.scale);
    const int n = ross.real_dimension - 1;
    const int d = ross_fat_multiplicity(ross.family);
    const double a = ross.scale;
    out.h = static_cast<double>(n + d) * a / n;  // nh = (n - d) a + 2 d a
    out.tau_oracle = std::pow(2.0 * a, -(n - d)) * std::pow(4.0 * a, -d);
    return out;
}

ResolvedProfile resolve_builtin(const std::string& name, double scale) {
    for (const auto& b : kBuiltinProfiles)
        if (name == b.name) return from_ross(name, {b.family, b.real_dimension, scale});
    throw ConfigError("unknown builtin profile: " + name);
}

}  // namespace

ResolvedProfile resolve_profile(const json& spec) {
    try {
        if (spec.is_string()) return resolve_builtin(spec.get<std::string>(), 1.0);
        if (!spec.is_object()) throw ConfigError("profile spec must be a string or object");
        if (spec.contains("builtin")) {
            const double scale = spec.contains("scale")
                                     ? positive_number(spec.at("scale"), "profile.scale")
                                     : 1.0;
            return resolve_builtin(spec.at("builtin").get<std::string>(), scale);
        }
        // synthetic diagonal profile
        const int n = spec.at("n").get<int>();
        const double a = positive_number(spec.at("a"), "profile.a");
        const double b = positive_number(spec.at("b"), "profile.b");
        if (!spec.at("entries").is_array())
            throw ConfigError("profile.entries must be an array of expressions");
        std::vector<Expr> entries;
        for (const auto& e : spec.at("entries"))
            entries.push_back(Expr::parse(e.get<std::string>(), "t"));
        ResolvedProfile out;
        out.label = spec.value("label", std::string("synthetic"));
        out.profile = make_synthetic_profile(n, std::move(entries), a, b);
        out.h = derive_params(out.profile, 40.0 / a, 1e-13).h;
        return out;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad profile spec: ") + e.what());
    }
}

WarpedSurface resolve_surface(const json& spec) {
    try {
        std::string name;
        double scale = 1.0;
        if (spec.is_string()) {
            name = spec.get<std::string>();
        } else if (spec.is_object() && spec.contains("builtin")) {
            name = spec.at("builtin").get<std::string>();
            if (spec.contains("scale")) scale = positive_number(spec.at("scale"), "surface.scale");
        } else if (spec.is_object() && spec.contains("f")) {
            const Expr f = Expr::parse(spec.at("f").get<std::string>(), "r");
            return make_expression_surface(spec.value("name", std::string("custom")), f,
                                           positive_number(spec.at("a"), "surface.a"),
                                           positive_number(spec.at("b"), "surface.b"));
        } else {
            throw ConfigError("surface spec must be a builtin name or {f, a, b}");
        }
        if (name == "hyperbolic") return make_hyperbolic_surface(scale);
        if (name == "pinched") return make_pinched_surface();
        throw ConfigError("unknown builtin surface: " + name);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad surface spec: ") + e.what());
    }
}

std::vector<ResolvedProfile> suite_profiles() {
    std::vector<ResolvedProfile> out;
    for (const char* name : {"RH2", "RH3", "RH4"})
        for (double a : {0.5, 1.0, 2.0}) out.push_back(resolve_builtin(name, a));
    for (const char* name : {"CH2", "HH2", "OH2"}) out.push_back(resolve_builtin(name, 1.0));
    return out;
}

json builtins_catalog() {
    json profiles = json::array();
    for (const auto& b : kBuiltinProfiles) {
        const int n = b.real_dimension - 1;
        const int d = ross_fat_multiplicity(b.family);
        profiles.push_back({{"name", b.name},
                            {"description", b.description},
                            {"dimension", b.real_dimension},
                            {"mean_curvature_h", static_cast<double>(n + d) / n},
                            {"scalable", true}});
    }
    json surfaces = json::array(
        {{{"name", "hyperbolic"},
          {"description", "constant curvature -a^2 surface, f = sinh(a r)/a (scalable)"}},
         {{"name", "pinched"},
          {"description",
           "non-constant surface f = sinh r + 0.3 (cosh r - 1) tanh^2 r, pinch (1, 2)"}}});
    json experiments = json::array(
        {{{"name", "tau"},
          {"description", "asymptotic volume density: dual-method agreement, closed forms, "
                          "density envelope, sphere mean-curvature bounds"}},
         {{"name", "entropy"},
          {"description", "ball-volume growth rate vs n h, isoperimetric comparison, "
                          "horosphere growth degree"}},
         {{"name", "margulis"},
          {"description", "scaled sphere/ball volume limits with convergence envelope"}},
         {{"name", "riccati-crosscheck"},
          {"description", "shape operator from the Riccati flow vs J' J^-1"}},
         {{"name", "rigidity"},
          {"description", "Ricci bounds, |A|^2 + Ric identity, equality-case flag, "
                          "base-point independence of h"}},
         {{"name", "comparison"},
          {"description", "random geodesic triangles on a surface vs the model "
                          "distance-ratio bounds"}},
         {{"name", "tangency"},
          {"description", "tangent circle curvature comparisons and horocycle "
                          "curvature along a geodesic"}},
         {{"name", "measures"},
          {"description", "boundary density ratios in the ball model: Poisson power, "
                          "cocycle identity, visual Jacobian limit"}},
         {{"name", "meanvalue"},
          {"description", "horocycle-ball means of harmonic extensions vs the boundary "
                          "value, with flow-residual trend"}}});
    return {{"profiles", profiles}, {"surfaces", surfaces}, {"experiments", experiments}};
}

namespace {

std::vector<ResolvedProfile> profiles_of(const json& cfg) {
    if (!cfg.contains("profiles")) return suite_profiles();
    if (!cfg.at("profiles").is_array() || cfg.at("profiles").empty())
        throw ConfigError("profiles must be a non-empty array");
    std::vector<ResolvedProfile> out;
    for (const auto& spec : cfg.at("profiles")) out.push_back(resolve_profile(spec));
    return out;
}

// ---------------------------------------------------------------- tau ----

void run_tau(const json& cfg, Report& rep) {
    const double tau_rel = tol_of(cfg, "tau_rel", 1e-8);
    const double cert_slack = tol_of(cfg, "certificate_slack", 1e-10);
    const double mean_h_tol = tol_of(cfg, "mean_curvature_tol", 1e-7);

    Table table{"tau", {"profile", "tau_tensors", "tau_limit", "tau_oracle", "certificate"}, {}};
    Table gap{"density_gap", {"r", "gap", "envelope"}, {}};

    int idx = 0;
    for (const auto& rp : profiles_of(cfg)) {
        const auto& p = rp.profile;
        const double r_max = opt_of(cfg, "r_max", 40.0 / p.a);
        const double nh = p.n * rp.h;

        const AsymptoticDensity td = tau_from_tensors(p, r_max);
        const AsymptoticDensity tl = tau_from_limit(p, rp.h, r_max);
        rep.add(rp.label + ".tau_agreement", td.tau, tl.tau, tau_rel * td.tau);
        if (rp.tau_oracle > 0.0)
            rep.add(rp.label + ".tau_closed_form", td.tau, rp.tau_oracle, tau_rel * rp.tau_oracle);
        const double lo = std::pow(2.0 * p.b, -p.n), hi = std::pow(2.0 * p.a, -p.n);
        rep.add_margin(rp.label + ".tau_pinch_range",
                       std::min(td.tau - lo, hi - td.tau) / td.tau, 1e-9);

        // one flow serves both scans: the density envelope on r >= 0.5 and
        // the sphere mean-curvature bounds on r >= 0.1
        std::vector<double> grid;
        for (double r = 0.1; r < 0.95; r += 0.1) grid.push_back(r);
        for (double r = 1.0; r <= 40.0 + 1e-9; r += 0.5) grid.push_back(r);
        const auto flow = sphere_flow(p, grid, nh);

        double env_margin = 1e300, lo_margin = 1e300, hi_margin = 1e300;
        for (const auto& s : flow) {
            if (s.r >= 0.5 - 1e-12) {
                const double eps = epsilon_bound(p.a, p.n, s.r);
                const double dev = std::abs(s.theta_scaled / td.tau - 1.0);
                env_margin = std::min(env_margin, eps - dev);
                if (idx == 0) gap.rows.push_back({s.r, dev, eps});
            }
            lo_margin = std::min(lo_margin, s.mean_h - rp.h);
            hi_margin = std::min(hi_margin, rp.h + 1.0 / s.r - s.mean_h);
        }
        rep.add_margin(rp.label + ".density_envelope", env_margin, cert_slack);
        rep.add_margin(rp.label + ".mean_curvature_lower", lo_margin, mean_h_tol);
        rep.add_margin(rp.label + ".mean_curvature_upper", hi_margin, mean_h_tol);

        table.rows.push_back({static_cast<double>(idx), td.tau, tl.tau, rp.tau_oracle,
                              std::max(td.error_bound, tl.error_bound)});
        ++idx;
    }
    rep.tables.push_back(std::move(table));
    rep.plots.emplace_back("density", convergence_svg(gap, 0, 1));
    rep.tables.push_back(std::move(gap));
}

// ------------------------------------------------------------ entropy ----

void run_entropy(const json& cfg, Report& rep) {
    const double slope_rel = tol_of(cfg, "slope_rel", 0.01);
    const double iso_slack = tol_of(cfg, "isoperimetric_slack", 1e-8);

    Table table{"entropy", {"profile", "slope", "expected", "iso_margin", "growth_degree"}, {}};

    int idx = 0;
    for (const auto& rp : profiles_of(cfg)) {
        const auto& p = rp.profile;
        const double nh = p.n * rp.h;
        const double hi = std::max(40.0, 30.0 / p.a + 2.0);
        const auto grid = grid_of(cfg, "r_grid", 0.5, hi, 0.5);
        const VolumeCurve vc = volume_curve(p, rp.h, grid);

        const EntropyEstimate est = entropy_from_curve(vc, 10.0 / p.a, 30.0 / p.a);
        rep.add(rp.label + ".entropy_slope", est.slope, nh, slope_rel * nh);

        double iso = 1e300;
        for (std::size_t i = 0; i < vc.r.size(); ++i)
            iso = std::min(iso, (vc.sphere_scaled[i] - nh * vc.ball_scaled[i]) /
                                    vc.sphere_scaled[i]);
        rep.add_margin(rp.label + ".isoperimetric", iso, iso_slack);

        double degree = -1.0;
        if (rp.is_ross) {
            const GrowthExponent ge = horosphere_growth_exponent(rp.ross);
            degree = ge.numeric;
            rep.add(rp.label + ".growth_degree", ge.numeric, ge.exact, 1e-9);
            // exact integer identity nh/a = (n - d) + 2d
            const double ratio = nh / rp.ross.scale;
            rep.add(rp.label + ".growth_degree_int", std::floor(ratio + 0.5),
                    static_cast<double>(ge.exact), 0.0);
        }
        table.rows.push_back({static_cast<double>(idx), est.slope, nh, iso, degree});
        ++idx;
    }
    rep.tables.push_back(std::move(table));
}

// ----------------------------------------------------------- margulis ----

void run_margulis(const json& cfg, Report& rep) {
    const double dual_rel = tol_of(cfg, "dual_rel", 1e-8);
    const double limit_rel = tol_of(cfg, "limit_rel", 1e-6);

    Table volumes{"volumes", {"profile", "r", "log_sphere", "log_ball", "normalized"}, {}};
    Table gap{"margulis_gap", {"r", "gap", "envelope"}, {}};

    int idx = 0;
    for (const auto& rp : profiles_of(cfg)) {
        const auto& p = rp.profile;
        const double nh = p.n * rp.h;
        const double omega = unit_sphere_volume(p.n);
        const double r_max = opt_of(cfg, "r_max", std::max(40.0, 40.0 / p.a));

        auto grid = grid_of(cfg, "r_grid", 1.0, 40.0, 0.5);
        if (grid.back() < r_max) grid.push_back(r_max);
        const VolumeCurve vc = volume_curve(p, rp.h, grid);

        // sphere_scaled/ball_scaled already carry the unit-sphere volume factor
        const double m = vc.sphere_scaled.back();
        const double from_tau = omega * tau_from_tensors(p, r_max).tau;
        const double ball_limit = vc.ball_scaled.back();
        rep.add(rp.label + ".margulis_dual", m, from_tau, dual_rel * m);
        rep.add(rp.label + ".ball_limit", ball_limit * nh, m, limit_rel * m);
        if (rp.is_ross && rp.ross.family == RossFamily::Real && rp.ross.real_dimension == 3 &&
            rp.ross.scale == 1.0)
            rep.add(rp.label + ".sphere_limit_closed_form", m, M_PI, 1e-6);

        double env = 1e300;
        for (std::size_t i = 0; i < vc.r.size(); ++i) {
            if (vc.r[i] > 40.0 + 1e-9) break;
            const double eps = m * epsilon_bound(p.a, p.n, vc.r[i]);
            const double dev = std::abs(vc.sphere_scaled[i] - m);
            env = std::min(env, eps - dev);
            volumes.rows.push_back({static_cast<double>(idx), vc.r[i], vc.log_sphere[i],
                                    vc.log_ball[i], vc.sphere_scaled[i]});
            if (idx == 0) gap.rows.push_back({vc.r[i], dev, eps});
        }
        rep.add_margin(rp.label + ".scaled_sphere_envelope", env, 1e-12 * m);
        ++idx;
    }
    rep.tables.push_back(std::move(volumes));
    rep.plots.emplace_back("margulis", convergence_svg(gap, 0, 1));
    rep.tables.push_back(std::move(gap));
}

// ----------------------------------------------------------- riccati ----

void run_riccati(const json& cfg, Report& rep) {
    const double tol = tol_of(cfg, "crosscheck_tol", 1e-6);
    Table table{"crosscheck", {"profile", "t", "gap"}, {}};

    int idx = 0;
    for (const auto& rp : profiles_of(cfg)) {
        const auto& p = rp.profile;
        const auto grid = grid_of(cfg, "t_grid", 0.1, 20.0, 0.3);
        const auto flow = sphere_flow(p, grid);
        const auto ric = riccati_integrate(p, flow.front().A, grid.front(), grid.back(), 1e-13,
                                           grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double g = (flow[i].A - ric[i].A).cwiseAbs().maxCoeff();
            worst = std::max(worst, g);
            table.rows.push_back({static_cast<double>(idx), grid[i], g});
        }
        rep.add(rp.label + ".riccati_jacobi_gap", worst, 0.0, tol);
        ++idx;
    }
    rep.tables.push_back(std::move(table));
}

// ---------------------------------------------------------- rigidity ----

void run_rigidity(const json& cfg, Report& rep) {
    const double identity_tol = tol_of(cfg, "identity_tol", 1e-8);
    const double h_const_tol = tol_of(cfg, "h_constancy_tol", 1e-9);

    Table table{"rigidity", {"profile", "ric", "norm_A2", "h", "constant_flag"}, {}};

    int idx = 0;
    for (const auto& rp : profiles_of(cfg)) {
        const auto& p = rp.profile;
        const RicciNormChecks rc = ricci_and_norm_checks(p);
        rep.add(rp.label + ".norm_identity", rc.norm_A2, -rc.ric, identity_tol);
        rep.add_margin(rp.label + ".ricci_lower", rc.ric - rc.ric_lower, identity_tol);
        rep.add_margin(rp.label + ".ricci_upper", rc.ric_upper - rc.ric, identity_tol);
        const bool expect_const = p.constant && p.a == p.b;
        rep.add(rp.label + ".equality_flag", rc.constant_curvature_flag ? 1.0 : 0.0,
                expect_const ? 1.0 : 0.0, 0.0);

        // base-point independence of the horosphere mean curvature
        double h_lo = 1e300, h_hi = -1e300;
        for (double t0 : {0.0, 1.3}) {
            const double h = derive_params(p.shifted(t0), 40.0 / p.a, 1e-13).h;
            h_lo = std::min(h_lo, h);
            h_hi = std::max(h_hi, h);
        }
        rep.add(rp.label + ".h_constancy", h_hi - h_lo, 0.0, h_const_tol);

        table.rows.push_back({static_cast<double>(idx), rc.ric, rc.norm_A2, rc.h,
                              rc.constant_curvature_flag ? 1.0 : 0.0});
        ++idx;
    }
    rep.tables.push_back(std::move(table));
}

// ---------------------------------------------- comparison / tangency ----

void run_comparison(const json& cfg, Report& rep, std::uint64_t seed) {
    const WarpedSurface s = resolve_surface(cfg.contains("surface") ? cfg.at("surface")
                                                                    : json("pinched"));
    const int trials = cfg.value("trials", 200);
    if (trials <= 0) throw ConfigError("trials must be positive");
    const double slack = tol_of(cfg, "slack", 1e-6);
    const double equality_tol = tol_of(cfg, "equality_tol", 1e-8);

    const SampledCheckReport r = verify_triangle_comparison(s, trials, seed, slack);
    rep.add("triangle_violations", r.violations, 0.0, 0.0);
    rep.add_margin("triangle_worst_margin", r.worst_margin, slack);
    if (s.a == s.b)  // both bounds coincide: the inequalities must be equalities
        rep.add("triangle_equality", std::max(0.0, -r.worst_margin), 0.0, equality_tol);

    Table table{"summary", {"trials", "checks", "violations", "worst_margin"}, {}};
    table.rows.push_back({static_cast<double>(r.trials), static_cast<double>(r.checks),
                          static_cast<double>(r.violations), r.worst_margin});
    rep.tables.push_back(std::move(table));
}

void run_tangency(const json& cfg, Report& rep, std::uint64_t seed) {
    const WarpedSurface s = resolve_surface(cfg.contains("surface") ? cfg.at("surface")
                                                                    : json("pinched"));
    const int trials = cfg.value("trials", 100);
    if (trials <= 0) throw ConfigError("trials must be positive");
    const double slack = tol_of(cfg, "slack", 1e-6);
    const double equality_tol = tol_of(cfg, "equality_tol", 1e-8);

    const SampledCheckReport r = verify_tangent_circles(s, trials, seed, slack);
    rep.add("tangent_violations", r.violations, 0.0, 0.0);
    rep.add_margin("tangent_worst_margin", r.worst_margin, slack);
    if (s.a == s.b)
        rep.add("tangent_equality", std::max(0.0, -r.worst_margin), 0.0, equality_tol);

    // horocycle mean curvature along the axis geodesic through the pole
    const auto prof = horocurvature_profile(s, -2.0, 2.0, 17);
    double h_lo = 1e300, h_hi = -1e300;
    Table curve{"horocurvature", {"t", "h"}, {}};
    for (const auto& [t, h] : prof) {
        h_lo = std::min(h_lo, h);
        h_hi = std::max(h_hi, h);
        curve.rows.push_back({t, h});
    }
    if (s.a == s.b) {
        rep.add("horocurvature_value", std::max(std::abs(h_lo - s.a), std::abs(h_hi - s.a)),
                0.0, equality_tol);
    } else {
        // non-constant horocycle curvature exhibits the failure of the
        // constant-h property on this surface
        rep.add_margin("horocurvature_spread_exceeds", (h_hi - h_lo) - 1e-2, 0.0);
        rep.add_margin("horocurvature_in_pinch",
                       std::min(h_lo - s.a, s.b - h_hi), slack);
    }
    rep.plots.emplace_back("horocurvature", convergence_svg(curve, 0, 1));
    rep.tables.push_back(std::move(curve));

    Table table{"summary", {"trials", "checks", "violations", "worst_margin"}, {}};
    table.rows.push_back({static_cast<double>(r.trials), static_cast<double>(r.checks),
                          static_cast<double>(r.violations), r.worst_margin});
    rep.tables.push_back(std::move(table));
}

// ----------------------------------------------------------- measures ----

BallPoint sample_ball(Rng& rng, int dim, double radius) {
    for (;;) {
        BallPoint v(dim);
        for (int i = 0; i < dim; ++i) v[i] = rng.u(-1.0, 1.0);
        const double n2 = v.squaredNorm();
        if (n2 <= 1.0 && n2 > 1e-4) return radius * v;
    }
}

void run_measures(const json& cfg, Report& rep, std::uint64_t seed) {
    const int dim = cfg.value("dimension", 3);
    if (dim < 2) throw ConfigError("dimension must be >= 2");
    const ModelCurvature a(opt_of(cfg, "a", 1.0));
    const int trials = cfg.value("trials", 100);
    if (trials <= 0) throw ConfigError("trials must be positive");
    const double t = opt_of(cfg, "t", 30.0);
    const int n = dim - 1;

    const double poisson_tol = tol_of(cfg, "poisson_rel", 1e-10);
    const double cocycle_tol = tol_of(cfg, "cocycle_tol", 1e-12);
    const double visual_tol = tol_of(cfg, "visual_rel", 1e-4);
    const double busemann_tol = tol_of(cfg, "busemann_tol", 1e-8);

    Rng rng(seed);
    Table table{"deviations", {"trial", "poisson", "cocycle", "visual", "busemann"}, {}};
    double w_poisson = 0.0, w_cocycle = 0.0, w_visual = 0.0, w_busemann = 0.0;

    const BallPoint origin = BallPoint::Zero(dim);
    for (int k = 0; k < trials; ++k) {
        const BallPoint x = sample_ball(rng, dim, 0.85);
        const BallPoint y = sample_ball(rng, dim, 0.85);
        const BallPoint z = sample_ball(rng, dim, 0.85);
        BoundaryPoint xi = sample_ball(rng, dim, 1.0);
        xi /= xi.norm();

        const double hr = harmonic_density_ratio(a, x, y, xi);
        const double pw = std::pow(poisson_kernel(x, xi) / poisson_kernel(y, xi), n);
        const double dev_p = std::abs(hr - pw) / hr;

        const double dev_c = std::abs(hr * harmonic_density_ratio(a, y, z, xi) *
                                          harmonic_density_ratio(a, z, x, xi) -
                                      1.0);

        const double vr = visual_density_ratio_numeric(a, x, y, xi, t);
        const double dev_v = std::abs(vr / hr - 1.0);

        const RayPoint far = geodesic_ray_point(a, origin, xi, t);
        const double dev_b = std::abs((ball_distance(a, x, far) - t) - busemann(a, x, xi));

        w_poisson = std::max(w_poisson, dev_p);
        w_cocycle = std::max(w_cocycle, dev_c);
        w_visual = std::max(w_visual, dev_v);
        w_busemann = std::max(w_busemann, dev_b);
        table.rows.push_back({static_cast<double>(k), dev_p, dev_c, dev_v, dev_b});
    }

    rep.add("poisson_power_ratio", w_poisson, 0.0, poisson_tol);
    rep.add("cocycle_identity", w_cocycle, 0.0, cocycle_tol);
    rep.add("visual_jacobian_limit", w_visual, 0.0, visual_tol);
    rep.add("busemann_ray_limit", w_busemann, 0.0, busemann_tol);
    rep.tables.push_back(std::move(table));
}

// ---------------------------------------------------------- meanvalue ----

void run_meanvalue(const json& cfg, Report& rep) {
    const ModelCurvature a(opt_of(cfg, "a", 1.0));
    const double dev_tol = tol_of(cfg, "mean_tol", 5e-2);

    std::vector<std::string> bumps = {"exp(-4*(1-cos(phi)))", "exp(-10*(1-cos(phi)))",
                                      "exp(-25*(1-cos(phi)))"};
    if (cfg.contains("bumps")) {
        if (!cfg.at("bumps").is_array() || cfg.at("bumps").empty())
            throw ConfigError("bumps must be a non-empty array of expressions");
        bumps.clear();
        for (const auto& b : cfg.at("bumps")) bumps.push_back(b.get<std::string>());
    }
    std::vector<double> schedule;
    if (cfg.contains("radii")) {
        for (const auto& r : cfg.at("radii"))
            schedule.push_back(positive_number(r, "radii entry"));
        if (!std::is_sorted(schedule.begin(), schedule.end()))
            throw ConfigError("radii must be increasing");
    }

    for (std::size_t i = 0; i < bumps.size(); ++i) {
        Expr f = [&] {
            try {
                return Expr::parse(bumps[i], "phi");
            } catch (const std::exception& e) {
                throw ConfigError(std::string("bad boundary expression: ") + e.what());
            }
        }();
        const MeanValueResult mv = mean_value_experiment(a, f, schedule);
        const std::string tag = "bump" + std::to_string(i);
        rep.add(tag + ".best_mean_deviation", mv.best_deviation, 0.0, dev_tol);
        rep.add(tag + ".residual_trend", mv.residual_trend_ok ? 1.0 : 0.0, 1.0, 0.0);

        Table table{tag, {"radius", "mean", "residual"}, {}};
        for (std::size_t j = 0; j < mv.radii.size(); ++j)
            table.rows.push_back({mv.radii[j], mv.means[j], mv.residuals[j]});
        if (i == 0) rep.plots.emplace_back("residual", convergence_svg(table, 0, 2));
        rep.tables.push_back(std::move(table));
    }
}

}  // namespace

RunResult run_experiment(const json& config, const std::string& out_dir,
                         std::optional<std::uint64_t> seed_override) {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    if (!config.contains("experiment") || !config.at("experiment").is_string())
        throw ConfigError("config needs an \"experiment\" string");
    const std::string kind = config.at("experiment").get<std::string>();

    std::uint64_t seed = kDefaultSeed;
    if (config.contains("seed")) {
        const json& s = config.at("seed");
        if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() &&
                                       s.get<std::int64_t>() < 0))
            throw ConfigError("seed must be a non-negative integer");
        seed = s.get<std::uint64_t>();
    }
    if (seed_override) seed = *seed_override;

    json echo = config;
    echo["seed"] = seed;

    RunResult out;
    out.name = config.value("name", kind);
    out.report.experiment = kind;
    out.report.seed = seed;
    out.report.version = version_string();
    out.report.config_echo = echo.dump();
    {
        char buf[24];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(fnv1a(out.report.config_echo)));
        out.report.config_hash = buf;
    }

    if (kind == "tau") run_tau(config, out.report);
    else if (kind == "entropy") run_entropy(config, out.report);
    else if (kind == "margulis") run_margulis(config, out.report);
    else if (kind == "riccati-crosscheck") run_riccati(config, out.report);
    else if (kind == "rigidity") run_rigidity(config, out.report);
    else if (kind == "comparison") run_comparison(config, out.report, seed);
    else if (kind == "tangency") run_tangency(config, out.report, seed);
    else if (kind == "measures") run_measures(config, out.report, seed);
    else if (kind == "meanvalue") run_meanvalue(config, out.report);
    else throw ConfigError("unknown experiment kind: " + kind);

    out.files = out.report.write(out_dir, out.name);
    return out;
}

std::vector<json> acceptance_configs(std::uint64_t seed) {
    std::vector<json> out;
    auto push = [&](json j) {
        j["seed"] = seed;
        out.push_back(std::move(j));
    };
    push({{"experiment", "tau"}, {"name", "tau-suite"}});
    push({{"experiment", "riccati-crosscheck"}, {"name", "riccati-suite"}});
    push({{"experiment", "entropy"}, {"name", "entropy-suite"}});
    push({{"experiment", "margulis"}, {"name", "margulis-suite"}});
    push({{"experiment", "rigidity"}, {"name", "rigidity-suite"}});
    push({{"experiment", "comparison"},
          {"name", "comparison-pinched"},
          {"surface", "pinched"},
          {"trials", 200}});
    push({{"experiment", "comparison"},
          {"name", "comparison-hyperbolic"},
          {"surface", "hyperbolic"},
          {"trials", 60}});
    push({{"experiment", "tangency"},
          {"name", "tangency-pinched"},
          {"surface", "pinched"},
          {"trials", 100}});
    push({{"experiment", "tangency"},
          {"name", "tangency-hyperbolic"},
          {"surface", "hyperbolic"},
          {"trials", 40}});
    push({{"experiment", "measures"}, {"name", "measures-dim3"}, {"dimension", 3},
          {"trials", 100}});
    push({{"experiment", "meanvalue"}, {"name", "meanvalue-plane"}});
    return out;
}

std::vector<RunResult> verify_all(const std::string& out_dir, std::uint64_t seed) {
    std::vector<RunResult> out;
    for (const auto& cfg : acceptance_configs(seed))
        out.push_back(run_experiment(cfg, out_dir));
    return out;
}

}  // namespace horolab
