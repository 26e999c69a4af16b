#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "reebstrip/error.hpp"
#include "reebstrip/expr.hpp"

using namespace reebstrip;

namespace {

// Hand integration: int e^t sin^2 t dt = e^t/2 - e^t (cos 2t + 2 sin 2t)/10.
double thm41_c1_closed(double x) { return -(std::exp(x) / 2 - std::exp(x) * (std::cos(2 * x) + 2 * std::sin(2 * x)) / 10); }

double trapezoid(const FunctionExpr& k, double a, double b, int n) {
  double h = (b - a) / n, s = 0.5 * (k.eval(a) + k.eval(b));
  for (int i = 1; i < n; ++i) s += k.eval(a + i * h);
  return s * h;
}

}  // namespace

TEST_CASE("parse and print") {
  CHECK(FunctionExpr::parse("sin(x)+1").eval(0.0) == 1.0);
  CHECK(FunctionExpr::parse("sin(x)+1").print() == "sin(x)+1");
  for (const char* s : {"sin(x)+(2+sin(exp(x^2)))/(4*(x^2+1))", "-cumint(exp(t)*sin(t)^2)", "x^2/(x^4+1)+0.5",
                        "x^(-2)", "-x^2", "2*pi-e", "atan(x)/sqrt(x^2+1)", "(x-1)*(x+1)", "-(x-1)"}) {
    FunctionExpr a = FunctionExpr::parse(s);
    FunctionExpr b = FunctionExpr::parse(a.print());
    CHECK(b.print() == a.print());
    CHECK(FunctionExpr::parse(b.print()).print() == b.print());
    for (double x : {0.3, 1.7, -2.2}) CHECK(b.eval(x) == doctest::Approx(a.eval(x)).epsilon(1e-15));
  }
  CHECK(FunctionExpr::parse("  sin ( x ) +  1 ").print() == "sin(x)+1");
}

TEST_CASE("parse errors carry offsets") {
  try {
    FunctionExpr::parse("sin(x)+");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 7);
  }
  CHECK_THROWS_AS(FunctionExpr::parse("foo(x)"), ParseError);
  CHECK_THROWS_AS(FunctionExpr::parse("x^2.5"), ParseError);
  CHECK_THROWS_AS(FunctionExpr::parse("cumint(x)"), ParseError);
  CHECK_THROWS_AS(FunctionExpr::parse("t+1"), ParseError);
  CHECK_THROWS_AS(FunctionExpr::parse("cumint(cumint(t))"), ParseError);
  CHECK_THROWS_AS(FunctionExpr::parse("2e"), ParseError);
  CHECK_THROWS_AS(FunctionExpr::parse("(x"), ParseError);
}

TEST_CASE("eval") {
  CHECK(FunctionExpr::parse("sin(x)").eval(0.0) == 0.0);
  CHECK(FunctionExpr::parse("x^2/(x^4+1)").eval(1.0) == 0.5);
  CHECK(FunctionExpr::parse("pi").eval(3.0) == std::numbers::pi);
  CHECK(FunctionExpr::parse("x^(-2)").eval(2.0) == 0.25);
  CHECK_THROWS_AS(FunctionExpr::parse("1/x").eval(0.0), DomainError);
  CHECK_THROWS_AS(FunctionExpr::parse("sqrt(x)").eval(-1.0), DomainError);
  CHECK(FunctionExpr::parse("3").is_constant());
  CHECK_FALSE(FunctionExpr::parse("x-x").has_cumint());
  CHECK_FALSE(FunctionExpr::parse("cumint(exp(t))").is_constant());
}

TEST_CASE("cumint against closed form and trapezoid") {
  FunctionExpr c1 = FunctionExpr::parse("-cumint(exp(t)*sin(t)^2)");
  FunctionExpr kernel = FunctionExpr::parse("exp(x)*sin(x)^2");
  double prev = 0.0;
  for (double x : {0.0, 5.0, 10.0}) {
    double v = c1.eval(x);
    CHECK(v == doctest::Approx(thm41_c1_closed(x)).epsilon(1e-9));
    // Tail below -60 is below 1e-26.
    CHECK(v == doctest::Approx(-trapezoid(kernel, -60.0, x, 400000)).epsilon(1e-7));
    CHECK(v < prev);
    prev = v;
  }
  CHECK(c1.eval(-0.0) == doctest::Approx(-0.4).epsilon(1e-12));
  // Values frozen from an arbitrary-precision quadrature oracle.
  FunctionExpr q0 = FunctionExpr::parse("cumint(exp(-t^2)*t*sin(t)^2)");
  FunctionExpr q1 = FunctionExpr::parse("cumint(exp(-t^2)*(t+1)*sin(t)^2)");
  CHECK(q0.eval(0.0) == doctest::Approx(-0.26903975345638421).epsilon(1e-9));
  CHECK(q0.eval(2.0) == doctest::Approx(-0.0057365280120932159).epsilon(1e-8));
  CHECK(q1.eval(-1.0) == doctest::Approx(-0.040051136723686564).epsilon(1e-9));
  CHECK(q1.eval(1.0) == doctest::Approx(0.2776752139536558).epsilon(1e-9));
  FunctionExpr g = FunctionExpr::parse("-cumint(exp(-t^2)*sin(t)^2)");
  CHECK(g.eval(3.0) == doctest::Approx(-0.56020186254052962).epsilon(1e-9));
}

TEST_CASE("cumint differences match direct quadrature") {
  FunctionExpr c = FunctionExpr::parse("cumint(exp(-t^2)*(t+1)*sin(t)^2)");
  FunctionExpr k = FunctionExpr::parse("exp(-x^2)*(x+1)*sin(x)^2");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-6, 6);
  for (int i = 0; i < 50; ++i) {
    double a = u(rng), b = u(rng);
    CHECK(std::abs((c.eval(b) - c.eval(a)) - integrate(k, a, b)) <= 2e-10 * std::max(1.0, std::abs(integrate(k, a, b))));
  }
}

TEST_CASE("cumint kernel that does not decay") {
  CHECK_THROWS_AS(FunctionExpr::parse("cumint(sin(t)^2)").eval(0.0), QuadratureError);
}

TEST_CASE("derivatives") {
  FunctionExpr c1 = FunctionExpr::parse("sin(x)+(2+sin(exp(x^2)))/(4*(x^2+1))");
  CHECK(c1.deriv(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  FunctionExpr ci = FunctionExpr::parse("cumint(exp(t)*sin(t)^2)");
  for (double x : {-3.0, 0.5, 2.0}) CHECK(ci.deriv(x) == doctest::Approx(std::exp(x) * std::sin(x) * std::sin(x)).epsilon(1e-14));
  Jet j = FunctionExpr::parse("x^3").jet(2.0);
  CHECK(j.value == 8.0);
  CHECK(j.d1 == 12.0);
  CHECK(j.d2 == 12.0);
  Jet s = ci.jet(1.0);
  CHECK(s.d2 == doctest::Approx(std::exp(1.0) * (std::sin(1.0) * std::sin(1.0) + std::sin(2.0))).epsilon(1e-14));
}
