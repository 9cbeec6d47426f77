#include <doctest.h>

#include <cmath>

#include "horolab/expr.hpp"

using namespace horolab;

TEST_CASE("arithmetic and precedence") {
    CHECK(Expr::parse("1+2*3", "t")(0.0) == doctest::Approx(7.0));
    CHECK(Expr::parse("(1+2)*3", "t")(0.0) == doctest::Approx(9.0));
    CHECK(Expr::parse("2*(1+t)-t/2", "t")(3.0) == doctest::Approx(6.5));
    CHECK(Expr::parse("-t*-t", "t")(4.0) == doctest::Approx(16.0));
    CHECK(Expr::parse("1/2/2", "t")(0.0) == doctest::Approx(0.25));  // left assoc
    CHECK(Expr::parse("2e-3 + 1.5", "t")(0.0) == doctest::Approx(1.502));
}

TEST_CASE("functions and constants") {
    CHECK(Expr::parse("sin(t)", "t")(1.2) == doctest::Approx(std::sin(1.2)).epsilon(1e-15));
    CHECK(Expr::parse("cos(pi)", "t")(0.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(Expr::parse("tanh(2*t)", "t")(0.7) == doctest::Approx(std::tanh(1.4)).epsilon(1e-15));
    CHECK(Expr::parse("exp(-t*t)", "t")(1.5) == doctest::Approx(std::exp(-2.25)).epsilon(1e-15));
    CHECK(Expr::parse("exp(-4*(1-cos(phi)))", "phi")(0.0) == doctest::Approx(1.0));
}

TEST_CASE("variable naming") {
    CHECK(Expr::parse("r*r", "r")(3.0) == doctest::Approx(9.0));
    CHECK_THROWS_AS(Expr::parse("t+1", "r"), ExprError);  // undeclared variable
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(Expr::parse("", "t"), ExprError);
    CHECK_THROWS_AS(Expr::parse("1+", "t"), ExprError);
    CHECK_THROWS_AS(Expr::parse("sin(t", "t"), ExprError);
    CHECK_THROWS_AS(Expr::parse("foo(t)", "t"), ExprError);
    CHECK_THROWS_AS(Expr::parse("1 2", "t"), ExprError);
    CHECK_THROWS_AS(Expr::parse("t^2", "t"), ExprError);
}

TEST_CASE("source text is preserved") {
    CHECK(Expr::parse("1 + tanh(t)", "t").text() == "1 + tanh(t)");
}
