#pragma once

#include <vector>

#include "horolab/jacobi.hpp"
#include "horolab/profile.hpp"

namespace horolab {

/// Volume of the unit sphere S^n in R^{n+1}.
double unit_sphere_volume(int n);

/// Geodesic sphere/ball volumes for an isotropic profile (volume density
/// independent of the direction), tracked on a radius grid. Everything is
/// carried in entropy-scaled form so large radii stay representable:
/// sphere_scaled = omega_n theta(r) e^{-nh r}, ball_scaled = V(B(r)) e^{-nh r}.
struct VolumeCurve {
    std::vector<double> r;
    std::vector<double> log_sphere;     // log vol S(r)
    std::vector<double> log_ball;       // log vol B(r)
    std::vector<double> sphere_scaled;  // vol S(r) e^{-nh r}
    std::vector<double> ball_scaled;    // vol B(r) e^{-nh r}
};

VolumeCurve volume_curve(const CurvatureProfile& p, double h, const std::vector<double>& r_grid,
                         double tol = 3e-15);

struct EntropyEstimate {
    double slope = 0.0;      // least-squares slope of log vol B(r)
    double expected = 0.0;   // n h
    double residual = 0.0;   // |slope - n h|
    double r_lo = 0.0, r_hi = 0.0;
};

/// Least-squares slope of log vol B(r) over the grid points inside
/// [r_lo, r_hi]; expected/residual are filled in by the caller-facing wrapper.
EntropyEstimate entropy_from_curve(const VolumeCurve& vc, double r_lo, double r_hi);

/// Volume entropy from the growth rate of log vol B(r) over the window
/// [10/a, 30/a], against the prediction n h.
EntropyEstimate entropy_estimate(const CurvatureProfile& p, double h, double tol = 3e-15);

struct IsoperimetricCheck {
    double worst_margin = 0.0;  // min over grid of (vol S - nh vol B) / vol S
    double worst_r = 0.0;
    bool holds = false;         // worst_margin >= -slack
};

/// vol S(r) >= n h vol B(r): the scaled comparison nh * ball <= sphere,
/// checked pointwise on the grid with relative slack.
IsoperimetricCheck isoperimetric_check(const CurvatureProfile& p, double h,
                                       const std::vector<double>& r_grid, double slack = 1e-8,
                                       double tol = 3e-15);

struct MargulisValue {
    double m = 0.0;            // lim vol S(r) e^{-nh r} = omega_n tau
    double from_tau = 0.0;     // omega_n * tau (tensor route)
    double ball_limit = 0.0;   // lim vol B(r) e^{-nh r}, should be m / (nh)
    double error_bound = 0.0;
};

/// Margulis function of an isotropic profile, computed both as the scaled
/// sphere-volume limit and as omega_n tau.
MargulisValue margulis(const CurvatureProfile& p, double h, double r_max, double tol = 3e-15);

struct GrowthExponent {
    double numeric = 0.0;  // nh / a from the flow
    int exact = 0;         // (n - d) + 2d for the rank one symmetric space
    double residual = 0.0;
};

/// Polynomial-degree analogue of horospheric volume growth for a rank one
/// symmetric space: nh/a must equal the integer (n - d) + 2d.
GrowthExponent horosphere_growth_exponent(const RossProfile& ross, double r_max = -1.0,
                                          double tol = 3e-15);

}  // namespace horolab
