#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "horolab/expr.hpp"

namespace horolab {

/// Polar coordinates about the pole of a rotationally symmetric surface.
struct SurfacePoint {
    double r = 0.0;
    double phi = 0.0;
};

struct GeodesicState {
    double r = 0.0, phi = 0.0;
    double rdot = 0.0, phidot = 0.0;
    double clairaut = 0.0;  // f(r)^2 phi', conserved

    SurfacePoint to_point() const { return {r, phi}; }
};

/// Rotationally symmetric Cartan-Hadamard surface dr^2 + f(r)^2 dphi^2 with
/// curvature K(r) = -f''(r)/f(r) pinched in [-b^2, -a^2].
struct WarpedSurface {
    std::string name;
    double a = 1.0, b = 1.0;
    std::function<double(double)> f, fp, fpp;

    double K(double r) const;
};

/// Constant curvature -a^2: f = sinh(a r)/a.
WarpedSurface make_hyperbolic_surface(double a);

/// The default non-constant test surface f(r) = sinh r + 0.3 (cosh r - 1)
/// tanh^2 r, pinched by (a, b) = (1, 2) (verified by sampling at load).
WarpedSurface make_pinched_surface();

/// Warping function from an expression in "r"; derivatives by high-order
/// finite differences; declared pinch re-verified by sampling at load.
WarpedSurface make_expression_surface(const std::string& name, const Expr& f, double a, double b,
                                      double r_sample_hi = 40.0);

struct ShootResult {
    GeodesicState end;
    double length = 0.0;
    double clairaut_drift = 0.0;  // max |f^2 phi' - L0| over the trajectory
};

/// Unit-speed geodesic from `from`, initial direction measured from the
/// outgoing radial direction (r' = cos dir, phi' = sin dir / f(r)).
ShootResult shoot(const WarpedSurface& s, const SurfacePoint& from, double dir, double length,
                  double tol = 1e-12);

struct ConnectResult {
    double d = 0.0;    // geodesic distance
    double psi = 0.0;  // launch angle at x toward y, in [0, pi], sign of
                       // wrapped (y.phi - x.phi) applied by angle_at
    int iterations = 0;
};

/// The unique connecting geodesic, by bisection on the launch angle.
ConnectResult connect(const WarpedSurface& s, const SurfacePoint& x, const SurfacePoint& y,
                      double tol = 1e-10);

double distance(const WarpedSurface& s, const SurfacePoint& x, const SurfacePoint& y,
                double tol = 1e-10);

/// Angle at `vertex` between the geodesics toward p and q, in [0, pi].
double angle_at(const WarpedSurface& s, const SurfacePoint& vertex, const SurfacePoint& p,
                const SurfacePoint& q, double tol = 1e-10);

struct SampledCheckReport {
    int trials = 0;
    int checks = 0;
    int violations = 0;
    double worst_margin = 0.0;  // most negative slack seen (>= 0 when clean)
    std::uint64_t seed = 0;
    bool pass = false;
};

/// Random triangles (x y z) with midpoints p, q at parameter theta in
/// {0.25, 0.5, 0.75} along xy, xz: the distance ratio C_a(d(y,z))/C_a(d(p,q))
/// must dominate the model ratio F_a, and the C_b ratio must stay below F_b.
SampledCheckReport verify_triangle_comparison(const WarpedSurface& s, int trials,
                                              std::uint64_t seed, double slack = 1e-6);

/// Geodesic curvature of the circle of the given radius about `center`, at
/// the point reached by shooting in direction `dir`; scalar Jacobi field
/// j'' + K j = 0 along the radial geodesic, k = j'(radius)/j(radius).
double circle_curvature(const WarpedSurface& s, const SurfacePoint& center, double radius,
                        double dir, double tol = 1e-12);

/// Internally tangent circle pairs with centers on a common geodesic through
/// the pole: curvature differences must lie between the constant-curvature
/// model differences, and the horocycle limit version must satisfy
/// 0 <= k_r - k_horo <= cot_a(r) - a.
SampledCheckReport verify_tangent_circles(const WarpedSurface& s, int trials, std::uint64_t seed,
                                          double slack = 1e-6);

/// Mean curvature h(t) of the horocycles centered at the backward endpoint of
/// the axis geodesic (signed coordinate t on the axis through the pole),
/// computed as the circle-curvature limit with centers pushed to t - T.
std::vector<std::pair<double, double>> horocurvature_profile(const WarpedSurface& s, double t_lo,
                                                             double t_hi, int samples,
                                                             double T = 45.0, double tol = 1e-12);

}  // namespace horolab
