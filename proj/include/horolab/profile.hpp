#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "horolab/expr.hpp"

namespace horolab {

enum class RossFamily { Real, Complex, Quaternionic, Octonionic };

/// Constructor data for a rank one symmetric space profile.
struct RossProfile {
    RossFamily family = RossFamily::Real;
    int real_dimension = 2;  // dimension of the space, n + 1
    double scale = 1.0;      // curvature eigenvalues are -scale^2 and -4 scale^2
};

/// The curvature operator R(t) = R(g'(t), .) g'(t) on the normal space of a
/// unit-speed geodesic, in a fixed parallel frame. Eigenvalues of -R(t) lie in
/// [a^2, b^2], i.e. sectional curvatures along the geodesic lie in [-b^2, -a^2].
struct CurvatureProfile {
    std::string name;
    int n = 1;             // normal space dimension (manifold dimension n + 1)
    double a = 1.0;        // upper curvature bound -a^2
    double b = 1.0;        // lower curvature bound -b^2
    bool diagonal = true;
    bool constant = true;  // R(t) independent of t

    /// Diagonal of R(t) (entries are <= 0); only valid when diagonal.
    std::function<Eigen::VectorXd(double)> diag;

    Eigen::MatrixXd at(double t) const;
    Eigen::VectorXd diag_at(double t) const { return diag(t); }

    /// Same profile traversed in reverse time, R~(t) = R(-t).
    CurvatureProfile reversed() const;
    /// Same profile shifted in time, R~(t) = R(t + t0).
    CurvatureProfile shifted(double t0) const;
};

/// Scalar manifold data derived from a profile: dimension n + 1, pinching
/// constants, horosphere mean curvature h and entropy E = n h.
struct ManifoldParams {
    int n = 1;
    double a = 1.0;
    double b = 1.0;
    double h = 1.0;
    double entropy = 1.0;
};

/// Constant curvature -a^2 in dimension n + 1.
CurvatureProfile make_constant_profile(int n, double a);

CurvatureProfile make_ross_profile(const RossProfile& ross);

/// Multiplicity d of the -4a^2 eigenvalue (0, 1, 3, 7 by family).
int ross_fat_multiplicity(RossFamily family);

/// Diagonal profile -diag(k_1(t), ..., k_n(t)) from bounded scalar maps with
/// declared pinching [a^2, b^2]. The declared bounds are spot-verified by
/// dense sampling; a violation is rejected with the offending t.
CurvatureProfile make_synthetic_profile(int n, std::vector<Expr> entries, double a, double b,
                                        double t_sample_lo = -40.0, double t_sample_hi = 40.0,
                                        int samples = 2000);

}  // namespace horolab
