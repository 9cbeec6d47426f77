#include "horolab/comparison.hpp"

#include <cmath>

namespace horolab {

namespace {

// cosh(x) - 1 without cancellation.
double cosh_m1(double x) {
    const double s = std::sinh(0.5 * x);
    return 2.0 * s * s;
}

double clamp_angle(double alpha) {
    constexpr double tol = 1e-12;
    const double pi = std::acos(-1.0);
    if (alpha < -tol || alpha > pi + tol)
        throw std::invalid_argument("angle outside [0, pi]");
    if (alpha < 0.0) return 0.0;
    if (alpha > pi) return pi;
    return alpha;
}

}  // namespace

double acosh_clamped(double x) {
    if (x < 1.0 - 1e-12) throw std::domain_error("acosh argument below 1");
    if (x <= 1.0) return 0.0;
    // log1p form, stable near 1
    const double y = x - 1.0;
    return std::log1p(y + std::sqrt(y * (y + 2.0)));
}

double c_a(ModelCurvature a, double s) {
    if (s < 0.0) throw std::invalid_argument("c_a: s must be >= 0");
    const double as = a.a * s;
    if (as < 1e-4) {
        // quadratic-leading series, exact Euclidean branch at a = 0
        const double x2 = as * as;
        return 0.5 * s * s * (1.0 + x2 / 12.0 + x2 * x2 / 360.0);
    }
    return cosh_m1(as) / (a.a * a.a);
}

double cot_a(ModelCurvature a, double s) {
    if (s <= 0.0) throw std::invalid_argument("cot_a: s must be > 0");
    const double as = a.a * s;
    if (as < 1e-4) {
        // a coth(a s) = 1/s + a^2 s/3 - a^4 s^3/45 + ...
        return 1.0 / s + a.a * a.a * s / 3.0 - std::pow(a.a, 4) * s * s * s / 45.0;
    }
    return a.a / std::tanh(as);
}

double law_of_cosines(ModelCurvature a, double r1, double r2, double alpha) {
    if (r1 < 0.0 || r2 < 0.0) throw std::invalid_argument("law_of_cosines: negative side");
    alpha = clamp_angle(alpha);
    const double sh = std::sin(0.5 * alpha);
    if (a.a == 0.0) {
        const double d2 = (r1 - r2) * (r1 - r2) + 4.0 * r1 * r2 * sh * sh;
        return std::sqrt(d2);
    }
    // cosh(a d) - 1 = cosh(a(r1-r2)) - 1 + sinh(a r1) sinh(a r2) (1 - cos alpha),
    // both terms nonnegative
    const double y = cosh_m1(a.a * (r1 - r2)) +
                     std::sinh(a.a * r1) * std::sinh(a.a * r2) * 2.0 * sh * sh;
    return std::log1p(y + std::sqrt(y * (y + 2.0))) / a.a;
}

ComparisonTriangle solve_triangle(ModelCurvature a, double r1, double r2, double alpha) {
    ComparisonTriangle t;
    t.r1 = r1;
    t.r2 = r2;
    t.alpha = clamp_angle(alpha);
    t.third_side = law_of_cosines(a, r1, r2, alpha);
    return t;
}

double f_comparison(ModelCurvature a, double r1, double r2, double alpha, double theta) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("f_comparison: theta must be in (0,1)");
    if (!(r1 > 0.0 && r2 > 0.0))
        throw std::invalid_argument("f_comparison: sides must be positive");
    alpha = clamp_angle(alpha);
    if (a.a == 0.0) return 1.0 / (theta * theta);

    const double sh2 = [&] {
        const double s = std::sin(0.5 * alpha);
        return 2.0 * s * s;
    }();
    const double num = cosh_m1(a.a * (r1 - r2)) +
                       std::sinh(a.a * r1) * std::sinh(a.a * r2) * sh2;
    const double den = cosh_m1(a.a * theta * (r1 - r2)) +
                       std::sinh(a.a * theta * r1) * std::sinh(a.a * theta * r2) * sh2;
    if (den == 0.0) {
        // degenerate triangle (r1 = r2, alpha = 0): limit of the ratio
        return (std::sinh(a.a * r1) * std::sinh(a.a * r2)) /
               (std::sinh(a.a * theta * r1) * std::sinh(a.a * theta * r2));
    }
    return num / den;
}

}  // namespace horolab
