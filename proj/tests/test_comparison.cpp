#include <doctest.h>

#include <cmath>
#include <random>

#include "horolab/comparison.hpp"

using namespace horolab;

namespace {
// independent oracle: embed both points on the curvature -1 hyperboloid and
// read the distance off the Minkowski product
double hyperboloid_side(double r1, double r2, double alpha) {
    const double p0 = std::cosh(r1), p1 = std::sinh(r1), p2 = 0.0;
    const double q0 = std::cosh(r2), q1 = std::sinh(r2) * std::cos(alpha),
                 q2 = std::sinh(r2) * std::sin(alpha);
    return std::acosh(p0 * q0 - p1 * q1 - p2 * q2);
}
}  // namespace

TEST_CASE("model comparison function C_a") {
    CHECK(c_a(ModelCurvature(1.0), 2.0) == doctest::Approx(std::cosh(2.0) - 1.0).epsilon(1e-14));
    CHECK(c_a(ModelCurvature(2.0), 1.5) ==
          doctest::Approx((std::cosh(3.0) - 1.0) / 4.0).epsilon(1e-14));
    // Euclidean branch: s^2/2
    CHECK(c_a(ModelCurvature(0.0), 3.0) == doctest::Approx(4.5).epsilon(1e-15));
    // small-s limit agrees with the Euclidean branch
    CHECK(c_a(ModelCurvature(1.0), 1e-6) == doctest::Approx(5e-13).epsilon(1e-6));
}

TEST_CASE("model cotangent cot_a") {
    CHECK(cot_a(ModelCurvature(1.0), 2.0) == doctest::Approx(1.0 / std::tanh(2.0)).epsilon(1e-14));
    CHECK(cot_a(ModelCurvature(0.5), 2.0) ==
          doctest::Approx(0.5 / std::tanh(1.0)).epsilon(1e-14));
    CHECK(cot_a(ModelCurvature(0.0), 4.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS(cot_a(ModelCurvature(1.0), 0.0));
}

TEST_CASE("law of cosines against the hyperboloid embedding") {
    CHECK(law_of_cosines(ModelCurvature(1.0), 1.0, 1.5, 0.8) ==
          doctest::Approx(1.2488396730812431).epsilon(1e-14));  // high-precision reference
    std::mt19937_64 rng(7);
    auto u = [&](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    for (int k = 0; k < 200; ++k) {
        const double r1 = u(0.05, 4.0), r2 = u(0.05, 4.0), al = u(0.01, 3.13);
        const double d = law_of_cosines(ModelCurvature(1.0), r1, r2, al);
        CHECK(d == doctest::Approx(hyperboloid_side(r1, r2, al)).epsilon(1e-10));
        // curvature scaling: d_a(r1, r2) = d_1(a r1, a r2)/a
        const double a = u(0.3, 3.0);
        CHECK(law_of_cosines(ModelCurvature(a), r1, r2, al) ==
              doctest::Approx(hyperboloid_side(a * r1, a * r2, al) / a).epsilon(1e-10));
        // triangle inequality and degenerate angles
        CHECK(d <= r1 + r2 + 1e-12);
        CHECK(d >= std::abs(r1 - r2) - 1e-12);
    }
    CHECK(law_of_cosines(ModelCurvature(1.0), 1.0, 2.0, 0.0) == doctest::Approx(1.0));
    CHECK(law_of_cosines(ModelCurvature(1.0), 1.0, 2.0, M_PI) == doctest::Approx(3.0));
    // Euclidean branch
    CHECK(law_of_cosines(ModelCurvature(0.0), 3.0, 4.0, M_PI / 2) == doctest::Approx(5.0));
}

TEST_CASE("solve_triangle echoes its inputs") {
    const ComparisonTriangle t = solve_triangle(ModelCurvature(1.0), 1.0, 1.5, 0.8);
    CHECK(t.r1 == 1.0);
    CHECK(t.r2 == 1.5);
    CHECK(t.alpha == 0.8);
    CHECK(t.third_side == doctest::Approx(1.2488396730812431).epsilon(1e-14));
}

TEST_CASE("two-triangle distance ratio") {
    // high-precision reference value
    CHECK(f_comparison(ModelCurvature(1.0), 1.0, 1.5, 0.8, 0.5) ==
          doctest::Approx(5.4937964545692415).epsilon(1e-13));
    // Euclidean branch is exactly 1/theta^2
    CHECK(f_comparison(ModelCurvature(0.0), 1.0, 2.0, 0.7, 0.25) == doctest::Approx(16.0));
    CHECK(f_comparison(ModelCurvature(0.0), 0.4, 2.5, 2.1, 0.5) == doctest::Approx(4.0));
    // negative curvature spreads geodesics at least as fast as flat space
    std::mt19937_64 rng(11);
    auto u = [&](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    for (int k = 0; k < 100; ++k) {
        const double r1 = u(0.2, 3.0), r2 = u(0.2, 3.0), al = u(0.1, 3.0), th = u(0.1, 0.9);
        CHECK(f_comparison(ModelCurvature(1.0), r1, r2, al, th) >= 1.0 / (th * th) - 1e-9);
    }
    CHECK_THROWS(f_comparison(ModelCurvature(1.0), 1.0, 1.0, 0.5, 1.5));
}

TEST_CASE("clamped acosh") {
    CHECK(acosh_clamped(1.0 - 1e-13) == 0.0);
    CHECK(acosh_clamped(1.0) == 0.0);
    CHECK(acosh_clamped(2.0) == doctest::Approx(std::acosh(2.0)).epsilon(1e-15));
    CHECK_THROWS(acosh_clamped(0.5));
}
