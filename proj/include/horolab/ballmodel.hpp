#pragma once

#include <Eigen/Dense>
#include <vector>

#include "horolab/comparison.hpp"
#include "horolab/expr.hpp"

namespace horolab {

/// Point of the unit-ball model of the (n+1)-dimensional hyperbolic space of
/// curvature -a^2 (|x| < 1); boundary points are unit vectors.
using BallPoint = Eigen::VectorXd;
using BoundaryPoint = Eigen::VectorXd;

double ball_distance(ModelCurvature a, const BallPoint& x, const BallPoint& y);

/// Busemann function b_xi normalized to 0 at the origin:
/// b_xi(x) = -(1/a) log((1 - |x|^2)/|x - xi|^2).
double busemann(ModelCurvature a, const BallPoint& x, const BoundaryPoint& xi);

/// (1 - |x|^2)/|x - xi|^2, the ball-model Poisson kernel (up to the dimension
/// exponent, which enters through the density ratio).
double poisson_kernel(const BallPoint& x, const BoundaryPoint& xi);

/// dmu_x/dmu_y(xi) = e^{-n a (b_xi(x) - b_xi(y))}, the harmonic-measure
/// density ratio in constant curvature (n + 1 = ambient dimension).
double harmonic_density_ratio(ModelCurvature a, const BallPoint& x, const BallPoint& y,
                              const BoundaryPoint& xi);

/// Mobius translation phi_c of the unit ball (phi_c(0) = c); used to slide
/// geodesics to radial position.
BallPoint mobius_translate(const BallPoint& c, const BallPoint& x);

/// Point at hyperbolic distance t from x on the geodesic ray toward xi.
BallPoint geodesic_point(ModelCurvature a, const BallPoint& x, const BoundaryPoint& xi, double t);

/// A point far along a geodesic ray: 1 - |z|^2 underflows in coordinates, so
/// it is carried analytically through the Mobius translation.
struct RayPoint {
    BallPoint z;
    double one_minus_norm2 = 0.0;
};

RayPoint geodesic_ray_point(ModelCurvature a, const BallPoint& x, const BoundaryPoint& xi,
                            double t);

/// Distance from an interior point to a far ray point, stable for large t.
double ball_distance(ModelCurvature a, const BallPoint& x, const RayPoint& y);

/// Finite-radius Jacobian ratio of the radial projections from x and y:
/// (sinh(a r_y(z_t))/sinh(a t))^n / <grad r_x, grad r_y>(z_t) with z_t at
/// distance t from x toward xi; converges to harmonic_density_ratio as
/// t grows. Throws when t is too small (gradient inner product <= 0).
double visual_density_ratio_numeric(ModelCurvature a, const BallPoint& x, const BallPoint& y,
                                    const BoundaryPoint& xi, double t);

/// Horocycle-ball means of the harmonic extension of a boundary function on
/// the hyperbolic plane of curvature -a^2, computed in the upper half-plane
/// with the target boundary point sent to infinity. The boundary function is
/// given as an expression in the ball-model boundary angle "phi", with the
/// target point at phi = 0.
struct MeanValueResult {
    std::vector<double> radii;
    std::vector<double> means;      // ball average of F on the base horocycle
    std::vector<double> residuals;  // max_t |g'' - nh g'| on the flow grid
    double boundary_value = 0.0;    // F at the target boundary point
    double best_deviation = 0.0;
    double best_radius = 0.0;
    bool residual_trend_ok = false;  // decreasing over the last three doublings
};

MeanValueResult mean_value_experiment(ModelCurvature a, const Expr& boundary_fn,
                                      std::vector<double> radius_schedule = {});

}  // namespace horolab
