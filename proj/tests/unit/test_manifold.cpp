#include <doctest.h>

#include <cmath>

#include "jobs.hpp"
#include "reebstrip/error.hpp"
#include "reebstrip/manifold.hpp"

using namespace reebstrip;

namespace {

Window strip(double lo, double hi) {
  Window w;
  w.x_lo = lo;
  w.x_hi = hi;
  return w;
}

}  // namespace

TEST_CASE("probes lie on X") {
  FunctionExpr c1 = FunctionExpr::parse("x"), c2 = FunctionExpr::parse("x+1");
  auto probes = sample_on_X(c1, c2, 3, strip(-5, 5), 200, 11);
  REQUIRE(probes.size() == 200);
  int boundary = 0;
  for (const auto& p : probes) {
    REQUIRE(p.point.size() == 4);
    CHECK(std::abs(p.F) < 1e-12);
    if (p.boundary) {
      ++boundary;
      CHECK(p.point[2] == 0.0);
      CHECK(p.point[3] == 0.0);
    }
    CHECK(check_regularity(p).pass);
    // No critical points at all for parallel lines.
    CHECK(p.observed_rank == 1);
  }
  CHECK(boundary == 20);
  CHECK(sample_on_X(c1, c2, 2, strip(-5, 5), 0).empty());
}

TEST_CASE("sampling is reproducible") {
  FunctionExpr c1 = FunctionExpr::parse("sin(x)"), c2 = FunctionExpr::parse("sin(x)+1");
  auto a = sample_on_X(c1, c2, 2, strip(-5, 5), 50, 3), b = sample_on_X(c1, c2, 2, strip(-5, 5), 50, 3);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].point == b[i].point);
}

TEST_CASE("gradient of F") {
  FunctionExpr c1 = FunctionExpr::parse("x^2"), c2 = FunctionExpr::parse("x^2+1");
  // x2 = 0.5: c1 = 0.25, c2 = 1.25; x1 = 0.75 gives F = 0.25 - y^2.
  ManifoldProbe p = make_probe(c1, c2, {0.75, 0.5, 0.5});
  CHECK(std::abs(p.F) < 1e-15);
  REQUIRE(p.gradient.size() == 3);
  CHECK(p.gradient[0] == doctest::Approx(0.25 + 1.25 - 1.5));
  // -c1'(c2 - x1) + (x1 - c1) c2' = -1 * 0.5 + 0.5 * 1
  CHECK(std::abs(p.gradient[1]) < 1e-15);
  CHECK(p.gradient[2] == doctest::Approx(-1.0));
}

TEST_CASE("off X is rejected") {
  FunctionExpr c1 = FunctionExpr::parse("x"), c2 = FunctionExpr::parse("x+1");
  ManifoldProbe p = make_probe(c1, c2, {0.5, 0.0, 3.0});
  CHECK_THROWS_AS(check_regularity(p), PreconditionError);
  CHECK_THROWS_AS(sample_on_X(FunctionExpr::parse("x"), FunctionExpr::parse("x"), 2, strip(-1, 1), 5), SeparationError);
}

TEST_CASE("critical points of the level map on X") {
  PipelineOptions opt;
  opt.build_graph = false;
  PipelineResult r = run_pipeline(testing::job("x^2", "x^2+1", -3, 3, -0.5, 3, "+inf", "+inf"), opt);
  Prop1Options po;
  po.n = 2000;
  Prop1Report rep = check_prop1(FunctionExpr::parse("x^2"), FunctionExpr::parse("x^2+1"), r.job.window, r.components(), po);
  CHECK(rep.ok());
  CHECK(rep.predicted == 2);
  CHECK(rep.predicted_regular == 0);
  CHECK(rep.regularity_failures == 0);
  CHECK(rep.morse_applicable);
  CHECK(rep.morse_checked == 2);
  // Restricted Hessians are +-2 times the curvature of the sheet: |det| = 4.
  CHECK(rep.min_morse_det == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("higher codimension") {
  PipelineOptions opt;
  opt.build_graph = false;
  PipelineResult r = run_pipeline(testing::job("sin(x)", "sin(x)+1", -6, 6, -2, 3), opt);
  Prop1Options po;
  po.m = 5;
  po.n = 1000;
  Prop1Report rep = check_prop1(FunctionExpr::parse("sin(x)"), FunctionExpr::parse("sin(x)+1"), r.job.window, r.components(), po);
  CHECK(rep.ok());
  CHECK(rep.predicted == 8);
}
