#include <doctest.h>

#include <cmath>
#include <random>

#include "horolab/comparison.hpp"
#include "horolab/surface.hpp"

using namespace horolab;

namespace {

double u01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

// curvature -1 distance between polar points, via the law of cosines
double h2_dist(const SurfacePoint& x, const SurfacePoint& y) {
    double dphi = std::remainder(y.phi - x.phi, 2.0 * M_PI);
    return law_of_cosines(ModelCurvature(1.0), x.r, y.r, std::abs(dphi));
}

}  // namespace

TEST_CASE("surface constructors and curvature") {
    const WarpedSurface h = make_hyperbolic_surface(1.0);
    CHECK(h.K(2.0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(h.K(0.0) == doctest::Approx(-1.0).epsilon(1e-6));

    const WarpedSurface p = make_pinched_surface();
    CHECK(p.a == 1.0);
    CHECK(p.b == 2.0);
    CHECK(p.f(0.0) == doctest::Approx(0.0));
    for (double r : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
        CHECK(p.K(r) <= -1.0 + 1e-12);
        CHECK(p.K(r) >= -4.0 - 1e-12);
    }
    // expression surfaces re-verify f(0) = 0 and f'(0) = 1
    CHECK_THROWS(make_expression_surface("bad", Expr::parse("r + 1", "r"), 1.0, 2.0));
    CHECK_THROWS(make_expression_surface("bad2", Expr::parse("2*r", "r"), 1.0, 2.0));
    const WarpedSurface e =
        make_expression_surface("sinh", Expr::parse("(exp(r) - exp(-r))/2", "r"), 1.0, 1.0);
    CHECK(e.f(1.5) == doctest::Approx(std::sinh(1.5)).epsilon(1e-10));
}

TEST_CASE("geodesic shooting") {
    const WarpedSurface s = make_pinched_surface();
    // radial shot from the pole
    const ShootResult radial = shoot(s, {0.0, 0.7}, 0.0, 3.0);
    CHECK(radial.end.r == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(radial.end.phi == doctest::Approx(0.7).epsilon(1e-10));

    // first-integral conservation over a long arc
    const ShootResult arc = shoot(s, {1.0, 0.0}, 1.1, 20.0);
    CHECK(arc.clairaut_drift <= 1e-9);
    CHECK(arc.length == doctest::Approx(20.0));

    // hyperbolic surface trajectories match the model distance
    const WarpedSurface h = make_hyperbolic_surface(1.0);
    const ShootResult g = shoot(h, {1.2, 0.3}, 0.8, 2.5);
    CHECK(h2_dist({1.2, 0.3}, g.end.to_point()) == doctest::Approx(2.5).epsilon(1e-8));
}

TEST_CASE("distance on the hyperbolic surface matches the closed form") {
    const WarpedSurface h = make_hyperbolic_surface(1.0);
    CHECK(distance(h, {0.0, 0.0}, {2.3, 1.0}) == doctest::Approx(2.3).epsilon(1e-10));
    std::mt19937_64 rng(13);
    for (int k = 0; k < 60; ++k) {
        const SurfacePoint x{0.2 + 2.8 * u01(rng), 2.0 * M_PI * u01(rng)};
        const SurfacePoint y{0.2 + 2.8 * u01(rng), 2.0 * M_PI * u01(rng)};
        CHECK(distance(h, x, y) == doctest::Approx(h2_dist(x, y)).epsilon(1e-8));
    }
}

TEST_CASE("triangle inequality on the pinched surface") {
    const WarpedSurface s = make_pinched_surface();
    std::mt19937_64 rng(17);
    for (int k = 0; k < 40; ++k) {
        const SurfacePoint x{0.1 + 2.0 * u01(rng), 2.0 * M_PI * u01(rng)};
        const SurfacePoint y{0.1 + 2.0 * u01(rng), 2.0 * M_PI * u01(rng)};
        const SurfacePoint z{0.1 + 2.0 * u01(rng), 2.0 * M_PI * u01(rng)};
        CHECK(distance(s, x, z) <= distance(s, x, y) + distance(s, y, z) + 1e-8);
    }
}

TEST_CASE("angles at a vertex") {
    const WarpedSurface h = make_hyperbolic_surface(1.0);
    const SurfacePoint v{1.0, 0.0};
    CHECK(angle_at(h, v, {2.0, 0.0}, {2.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-8));
    // collinear through the vertex along the axis
    CHECK(angle_at(h, v, {2.5, 0.0}, {0.3, 0.0}) == doctest::Approx(M_PI).epsilon(1e-8));
    // model oracle: angle from the dual law of cosines
    const SurfacePoint p{2.0, 1.1}, q{1.5, -0.8};
    const double rp = h2_dist(v, p), rq = h2_dist(v, q), d = h2_dist(p, q);
    const double cosal = (std::cosh(rp) * std::cosh(rq) - std::cosh(d)) /
                         (std::sinh(rp) * std::sinh(rq));
    CHECK(angle_at(h, v, p, q) == doctest::Approx(std::acos(cosal)).epsilon(1e-7));
}

TEST_CASE("triangle comparison suites") {
    // equality within tolerance on the constant-curvature surface
    const SampledCheckReport eq =
        verify_triangle_comparison(make_hyperbolic_surface(1.0), 40, 2024, 1e-6);
    CHECK(eq.pass);
    CHECK(eq.violations == 0);
    CHECK(std::abs(eq.worst_margin) <= 1e-8);

    // strict comparison on the pinched surface
    const SampledCheckReport pin =
        verify_triangle_comparison(make_pinched_surface(), 50, 2024, 1e-6);
    CHECK(pin.pass);
    CHECK(pin.violations == 0);
    CHECK(pin.checks >= 50 * 3 * 2);
}

TEST_CASE("circle curvature") {
    const WarpedSurface h = make_hyperbolic_surface(1.0);
    // geodesic curvature of a circle of radius r is coth r, from any center
    CHECK(circle_curvature(h, {0.0, 0.0}, 0.8, 0.3) ==
          doctest::Approx(1.0 / std::tanh(0.8)).epsilon(1e-9));
    CHECK(circle_curvature(h, {1.0, 0.4}, 1.3, 2.1) ==
          doctest::Approx(1.0 / std::tanh(1.3)).epsilon(1e-8));
}

TEST_CASE("tangent circle suites") {
    const SampledCheckReport eq =
        verify_tangent_circles(make_hyperbolic_surface(1.0), 20, 99, 1e-6);
    CHECK(eq.pass);
    CHECK(eq.violations == 0);

    const SampledCheckReport pin = verify_tangent_circles(make_pinched_surface(), 30, 99, 1e-6);
    CHECK(pin.pass);
    CHECK(pin.violations == 0);
}

TEST_CASE("horocycle curvature along a geodesic") {
    // constant curvature: horocycles have curvature exactly a
    const auto hc = horocurvature_profile(make_hyperbolic_surface(1.0), -1.0, 1.0, 5);
    for (const auto& [t, h] : hc) CHECK(h == doctest::Approx(1.0).epsilon(1e-8));

    // pinched surface: visibly non-constant, but inside the pinch bounds
    const auto pc = horocurvature_profile(make_pinched_surface(), -2.0, 2.0, 9);
    double lo = 1e300, hi = -1e300;
    for (const auto& [t, h] : pc) {
        lo = std::min(lo, h);
        hi = std::max(hi, h);
        CHECK(h >= 1.0 - 1e-6);
        CHECK(h <= 2.0 + 1e-6);
    }
    CHECK(hi - lo > 1e-2);
}
