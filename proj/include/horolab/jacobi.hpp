#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "horolab/profile.hpp"

namespace horolab {

struct JacobiState {
    double t = 0.0;
    Eigen::MatrixXd J, Jp;
};

struct JacobiTrajectory {
    std::vector<JacobiState> states;
    /// max over samples of |W(t) - W(t0)| / max(1, |J^T J'|), where
    /// W = J^T J' - J'^T J is the conserved Wronskian form.
    double wronskian_drift = 0.0;
};

/// Integrate J'' + R(t) J = 0 from (J0, J0p) at t0 to t1, sampling at the
/// given times (sorted in integration direction; t0 and t1 are always
/// included). Local error <= tol per unit time.
JacobiTrajectory integrate_jacobi(const CurvatureProfile& p, const Eigen::MatrixXd& J0,
                                  const Eigen::MatrixXd& J0p, double t0, double t1, double tol,
                                  std::vector<double> sample_ts = {});

struct RiccatiBlowup : std::runtime_error {
    double t_estimate;
    explicit RiccatiBlowup(double t)
        : std::runtime_error("riccati: finite-time blow-up near t = " + std::to_string(t)),
          t_estimate(t) {}
};

struct ShapeOperator {
    double t = 0.0;
    Eigen::MatrixXd A;
};

/// Integrate the Riccati equation A' + A^2 + R(t) = 0 from a symmetric A0.
/// Throws RiccatiBlowup when the solution escapes (negative eigenvalue
/// running off to -infinity in finite time).
std::vector<ShapeOperator> riccati_integrate(const CurvatureProfile& p, const Eigen::MatrixXd& A0,
                                             double t0, double t1, double tol,
                                             std::vector<double> sample_ts = {});

/// One radius of the sphere foliation flow around t = 0: the Jacobi tensor
/// with J(0) = 0, J'(0) = Id, plus derived quantities.
struct SphereFlowSample {
    double r = 0.0;
    double log_theta = 0.0;     // log det J(r)
    double mean_h = 0.0;        // tr(J' J^-1)/n, mean curvature of S(r)
    double theta_scaled = 0.0;  // theta(r) e^{-nh r}        (0 when nh not supplied)
    double ball_scaled = 0.0;   // int_0^r theta e^{-nh s} ds, times e^{-nh(r-s)} folded in:
                                // u with u' = theta_scaled - nh u  (0 when nh not supplied)
    Eigen::MatrixXd J, Jp, A;
};

/// Integrate the sphere Jacobi tensor out to the last grid radius in one pass.
/// When nh >= 0, theta_scaled is filled at the samples, and (if with_ball) the
/// scaled ball volume accumulator is carried along as an extra ODE state. The
/// flow starts at r0 = 1e-4 from the series expansion of the singular initial
/// condition (removes the 1/r stiffness at 0).
std::vector<SphereFlowSample> sphere_flow(const CurvatureProfile& p,
                                          const std::vector<double>& r_grid, double nh = -1.0,
                                          double tol = 3e-15, bool with_ball = false);

double log_theta(const CurvatureProfile& p, double r, double tol = 3e-15);
double theta(const CurvatureProfile& p, double r, double tol = 3e-15);
Eigen::MatrixXd sphere_shape_operator(const CurvatureProfile& p, double r, double tol = 3e-15);
double mean_curvature_along(const CurvatureProfile& p, double r, double tol = 3e-15);

/// A shape operator obtained as an r -> infinity limit, with the Cauchy
/// difference between r_max/2 and r_max as convergence certificate.
struct ShapeLimit {
    Eigen::MatrixXd A;
    double certificate = 0.0;
    double r_max = 0.0;
};

/// U'(0): shape operator of the horosphere centered at the backward endpoint
/// of the geodesic (limit of J'(0) J(0)^-1 for J(-r) = 0, J'(-r) = Id).
ShapeLimit horosphere_shape_operator(const CurvatureProfile& p, double r_max, double tol = 3e-15);

/// S'(0): derivative of the stable tensor (J(r) = 0 integrated back to 0);
/// -S'(0) is the shape operator of the horosphere centered at the forward
/// endpoint.
ShapeLimit stable_shape_operator(const CurvatureProfile& p, double r_max, double tol = 3e-15);

struct AsymptoticDensity {
    double tau = 0.0;
    double radius_used = 0.0;
    double error_bound = 0.0;
};

/// tau = 1 / det(U'(0) - S'(0)).
AsymptoticDensity tau_from_tensors(const CurvatureProfile& p, double r_max, double tol = 3e-15);

/// tau = lim_r theta(r) e^{-nh r}; the sequence must be nondecreasing, a
/// violation beyond tolerance signals a mismatched h.
AsymptoticDensity tau_from_limit(const CurvatureProfile& p, double h, double r_max,
                                 double tol = 3e-15);

/// eps(r) = (1 - e^{-2 a r})^{-n} - 1, the relative convergence certificate
/// for theta(r) e^{-nh r} -> tau. Requires a > 0.
double epsilon_bound(double a, int n, double r);

/// h = tr(U'(0))/n and E = n h, with pinching copied from the profile.
ManifoldParams derive_params(const CurvatureProfile& p, double r_max, double tol = 3e-15);

/// Curvature/second-fundamental-form identities at the trace level:
/// Ric(u,u) = tr R(0), |A|^2 = |U'(0)|_F^2, checked against
/// |A|^2 + Ric = 0 and the pinched Ricci bounds.
struct RicciNormChecks {
    double ric = 0.0;        // Ric(u, u) along the geodesic
    double norm_A2 = 0.0;    // |A_xi|^2 of the horosphere
    double h = 0.0;
    double ric_lower = 0.0;  // -n^2 h^2 + n(n-1) a^2
    double ric_upper = 0.0;  // -n^2 h^2 + n(n-1) b^2
    double identity_residual = 0.0;  // | |A|^2 + Ric |
    bool bounds_hold = false;
    bool constant_curvature_flag = false;  // h == a within 1e-9
};

RicciNormChecks ricci_and_norm_checks(const CurvatureProfile& p, double r_max = -1.0,
                                      double tol = 3e-15);

}  // namespace horolab
