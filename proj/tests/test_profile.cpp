#include <doctest.h>

#include <cmath>

#include "horolab/profile.hpp"

using namespace horolab;

TEST_CASE("constant profile") {
    const CurvatureProfile p = make_constant_profile(2, 1.5);
    CHECK(p.n == 2);
    CHECK(p.a == 1.5);
    CHECK(p.b == 1.5);
    CHECK(p.constant);
    CHECK(p.at(0.7).isApprox(-2.25 * Eigen::MatrixXd::Identity(2, 2)));
    CHECK_THROWS(make_constant_profile(0, 1.0));
    CHECK_THROWS(make_constant_profile(2, 0.0));
}

TEST_CASE("rank one symmetric space profiles") {
    // complex hyperbolic plane: eigenvalues -a^2 (mult n-d) and -4a^2 (mult d)
    const CurvatureProfile ch2 = make_ross_profile({RossFamily::Complex, 4, 1.0});
    CHECK(ch2.n == 3);
    const Eigen::VectorXd d = ch2.diag_at(0.0);
    CHECK(d.minCoeff() == doctest::Approx(-4.0));
    CHECK(d.sum() == doctest::Approx(-(2.0 + 4.0)));
    CHECK(ch2.a == doctest::Approx(1.0));
    CHECK(ch2.b == doctest::Approx(2.0));

    const CurvatureProfile oh2 = make_ross_profile({RossFamily::Octonionic, 16, 0.5});
    CHECK(oh2.n == 15);
    CHECK(oh2.diag_at(1.0).sum() == doctest::Approx(-(8 * 0.25 + 7 * 1.0)));

    CHECK(ross_fat_multiplicity(RossFamily::Real) == 0);
    CHECK(ross_fat_multiplicity(RossFamily::Complex) == 1);
    CHECK(ross_fat_multiplicity(RossFamily::Quaternionic) == 3);
    CHECK(ross_fat_multiplicity(RossFamily::Octonionic) == 7);

    CHECK_THROWS(make_ross_profile({RossFamily::Complex, 5, 1.0}));
    CHECK_THROWS(make_ross_profile({RossFamily::Quaternionic, 6, 1.0}));
    CHECK_THROWS(make_ross_profile({RossFamily::Octonionic, 8, 1.0}));
    CHECK_THROWS(make_ross_profile({RossFamily::Real, 3, -1.0}));
}

TEST_CASE("synthetic profiles with time shifts and reversal") {
    std::vector<Expr> entries;
    entries.push_back(Expr::parse("1 + 0.5*tanh(t)", "t"));
    const CurvatureProfile p =
        make_synthetic_profile(1, std::move(entries), std::sqrt(0.5), std::sqrt(1.5));
    CHECK_FALSE(p.constant);
    CHECK(p.diag_at(0.0)(0) == doctest::Approx(-1.0));
    CHECK(p.diag_at(2.0)(0) == doctest::Approx(-(1.0 + 0.5 * std::tanh(2.0))).epsilon(1e-15));

    const CurvatureProfile sh = p.shifted(2.0);
    CHECK(sh.diag_at(0.0)(0) == doctest::Approx(p.diag_at(2.0)(0)).epsilon(1e-15));
    const CurvatureProfile rv = p.reversed();
    CHECK(rv.diag_at(1.3)(0) == doctest::Approx(p.diag_at(-1.3)(0)).epsilon(1e-15));
}

TEST_CASE("declared pinching is verified by sampling") {
    std::vector<Expr> bad;
    bad.push_back(Expr::parse("0.25", "t"));  // curvature -0.25 outside [a^2, b^2] = [1, 4]
    CHECK_THROWS(make_synthetic_profile(1, std::move(bad), 1.0, 2.0));
}
