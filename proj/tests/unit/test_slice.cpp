#include <doctest.h>

#include <cmath>

#include "reebstrip/critical.hpp"
#include "reebstrip/expr.hpp"
#include "reebstrip/slice.hpp"

using namespace reebstrip;

namespace {

Window square() {
  Window w;
  w.x_lo = -3;
  w.x_hi = 3;
  w.value_lo = -0.5;
  w.value_hi = 3;
  return w;
}

TailMetadata diverging() {
  TailMetadata t;
  for (Owner o : {Owner::C1, Owner::C2})
    for (Side s : {Side::Minus, Side::Plus}) t.get(o, s) = Tail::diverges_plus();
  return t;
}

}  // namespace

TEST_CASE("slices of the parabola strip") {
  FunctionExpr c1 = FunctionExpr::parse("x^2"), c2 = FunctionExpr::parse("x^2+1");
  LevelSlice s = level_slice(c1, c2, 2.0, square(), diverging());
  REQUIRE(s.contours.size() == 2);
  CHECK(s.contours[0].lo == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-9));
  CHECK(s.contours[0].hi == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(s.contours[1].lo == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s.contours[1].hi == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(s.contours[0].touch_lo == TouchC1);
  CHECK(s.contours[0].touch_hi == TouchC2);
  for (const auto& c : s.contours) CHECK(c.kind == ContourKind::Compact);

  LevelSlice h = level_slice(c1, c2, 0.5, square(), diverging());
  REQUIRE(h.contours.size() == 1);
  CHECK(h.contours[0].lo == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-9));
  CHECK(h.contours[0].hi == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
  CHECK_FALSE(h.contours[0].is_critical);

  CHECK(level_slice(c1, c2, -1.0, square(), diverging()).contours.empty());
}

TEST_CASE("critical contours") {
  FunctionExpr c1 = FunctionExpr::parse("x^2"), c2 = FunctionExpr::parse("x^2+1");
  LevelSlice z = level_slice(c1, c2, 0.0, square(), diverging());
  REQUIRE(z.contours.size() == 1);
  CHECK(z.contours[0].is_critical);
  CHECK(z.contours[0].hi == doctest::Approx(0.0).epsilon(1e-9));
  LevelSlice one = level_slice(c1, c2, 1.0, square(), diverging());
  REQUIRE(one.contours.size() == 1);
  CHECK(one.contours[0].is_critical);
  REQUIRE(one.contours[0].critical_points.size() == 1);
  CHECK(one.contours[0].critical_points[0].first == Owner::C2);
}

TEST_CASE("constant pair is critical only at its boundary levels") {
  FunctionExpr c1 = FunctionExpr::parse("-1"), c2 = FunctionExpr::parse("1");
  Window w = square();
  w.value_lo = -2;
  TailMetadata t;
  for (Side s : {Side::Minus, Side::Plus}) {
    t.get(Owner::C1, s) = Tail::limit(-1);
    t.get(Owner::C2, s) = Tail::limit(1);
  }
  for (double p : {-1.0, 1.0}) {
    LevelSlice s = level_slice(c1, c2, p, w, t);
    REQUIRE(s.contours.size() == 1);
    CHECK(s.contours[0].is_critical);
    CHECK(s.contours[0].kind == ContourKind::FullLine);
  }
  LevelSlice s = level_slice(c1, c2, 0.0, w, t);
  REQUIRE(s.contours.size() == 1);
  CHECK_FALSE(s.contours[0].is_critical);
  CHECK(s.contours[0].lo_unbounded);
  CHECK(s.contours[0].hi_unbounded);
}

TEST_CASE("parallel lines give compact contours of width one") {
  FunctionExpr c1 = FunctionExpr::parse("x"), c2 = FunctionExpr::parse("x+1");
  Window w = square();
  w.value_lo = -2;
  for (double p : {-1.5, 0.0, 1.3}) {
    LevelSlice s = level_slice(c1, c2, p, w, diverging());
    REQUIRE(s.contours.size() == 1);
    CHECK(s.contours[0].lo == doctest::Approx(p - 1).epsilon(1e-9));
    CHECK(s.contours[0].hi == doctest::Approx(p).epsilon(1e-9));
    CHECK_FALSE(s.contours[0].is_critical);
  }
}

TEST_CASE("contour endpoints lie on the boundary curves") {
  FunctionExpr c1 = FunctionExpr::parse("sin(x)"), c2 = FunctionExpr::parse("sin(x)+2");
  Window w;
  w.x_lo = -9;
  w.x_hi = 9;
  w.value_lo = -1.5;
  w.value_hi = 3.5;
  TailMetadata t;
  t.get(Owner::C1, Side::Minus) = t.get(Owner::C1, Side::Plus) = Tail::oscillation(-1, 1);
  t.get(Owner::C2, Side::Minus) = t.get(Owner::C2, Side::Plus) = Tail::oscillation(1, 3);
  CriticalSet a = isolate_critical(c1, Owner::C1, w), b = isolate_critical(c2, Owner::C2, w);
  std::vector<CriticalComponent> comps = a.components;
  comps.insert(comps.end(), b.components.begin(), b.components.end());
  SliceContext ctx(c1, c2, w, t, comps);
  for (double p = -1.4; p < 3.4; p += 0.137) {
    LevelSlice s = ctx.slice(p);
    for (std::size_t i = 0; i < s.contours.size(); ++i) {
      const Contour& c = s.contours[i];
      if (i > 0) CHECK(s.contours[i - 1].hi < c.lo);
      for (double x : {c.lo, c.hi, c.mid()}) {
        if (x <= w.x_lo || x >= w.x_hi) continue;
        CHECK(c1.eval(x) <= p + 1e-8);
        CHECK(c2.eval(x) >= p - 1e-8);
      }
      if (!c.lo_at_edge) CHECK(std::min(std::abs(c1.eval(c.lo) - p), std::abs(c2.eval(c.lo) - p)) < 1e-8);
      if (!c.hi_at_edge) CHECK(std::min(std::abs(c1.eval(c.hi) - p), std::abs(c2.eval(c.hi) - p)) < 1e-8);
    }
  }
}
