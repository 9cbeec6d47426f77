#pragma once

#include <stdexcept>

namespace horolab {

/// Curvature parameter of the constant-curvature model plane: the plane has
/// sectional curvature -a^2, with a = 0 selecting the Euclidean branch.
struct ModelCurvature {
    double a = 1.0;

    explicit ModelCurvature(double a_) : a(a_) {
        if (a < 0.0) throw std::invalid_argument("ModelCurvature: a must be >= 0");
    }
};

struct ComparisonTriangle {
    double r1 = 0.0;
    double r2 = 0.0;
    double alpha = 0.0;   // radians, in [0, pi]
    double third_side = 0.0;
};

/// C_a(s) = (cosh(a s) - 1)/a^2 for a > 0, s^2/2 for a = 0.
double c_a(ModelCurvature a, double s);

/// cot_a(s) = a coth(a s) for a > 0, 1/s for a = 0. Requires s > 0.
double cot_a(ModelCurvature a, double s);

/// Third side of the model triangle with sides r1, r2 and enclosed angle alpha.
double law_of_cosines(ModelCurvature a, double r1, double r2, double alpha);

ComparisonTriangle solve_triangle(ModelCurvature a, double r1, double r2, double alpha);

/// The ratio C_a(third side of (r1, r2, alpha)) / C_a(third side of
/// (theta r1, theta r2, alpha)). Equals 1/theta^2 in the Euclidean branch.
/// Requires theta in (0, 1) and r1, r2 > 0.
double f_comparison(ModelCurvature a, double r1, double r2, double alpha, double theta);

/// acosh with arguments in [1 - 1e-12, 1] treated as exactly 1.
double acosh_clamped(double x);

}  // namespace horolab
