#include <doctest.h>

#include <sstream>

#include "jobs.hpp"
#include "random_pairs.hpp"
#include "reebstrip/error.hpp"
#include "reebstrip/oracle.hpp"

using namespace reebstrip;
using testing::job;

namespace {

struct Run {
  PipelineResult sweep;
  DiscreteGraph oracle;
  OracleDiff diff;
};

Run run(const JobConfig& j, int K = 4000) {
  Run r{run_pipeline(j), {}, {}};
  OracleOptions oo{K, 8192, exclusion_bands(r.sweep.accumulation.distinct_levels(), j.window)};
  r.oracle = discrete_reeb(FunctionExpr::parse(j.c1), FunctionExpr::parse(j.c2), j.window, oo);
  r.diff = compare(r.sweep.graph, r.oracle, oo.exclude);
  return r;
}

}  // namespace

TEST_CASE("parabola strip agrees with the raster") {
  Run r = run(job("x^2", "x^2+1", -3, 3, -0.5, 3, "+inf", "+inf"));
  CHECK(r.diff.match());
  CHECK(r.oracle.vertices.size() == 2);
  CHECK(r.oracle.ends == 2);
  CHECK(r.oracle.loops == 0);
  CHECK(r.oracle.edges == 3);
  CHECK(r.diff.sweep_degrees == std::vector<DegreePair>{{0, 1}, {1, 2}});
}

TEST_CASE("constant pair and lines") {
  JobConfig c = job("-1", "1", -10, 10, -2, 2);
  for (Side s : {Side::Minus, Side::Plus}) {
    c.tails.get(Owner::C1, s) = Tail::limit(-1);
    c.tails.get(Owner::C2, s) = Tail::limit(1);
  }
  Run rc = run(c);
  CHECK(rc.diff.match());
  CHECK(rc.oracle.ends == 0);
  Run rl = run(job("x", "x+1", -10, 10, -3, 3, "-inf", "+inf"));
  CHECK(rl.diff.match());
  CHECK(rl.oracle.vertices.empty());
  CHECK(rl.oracle.ends == 2);
}

TEST_CASE("coincident events at one level") {
  JobConfig j = job("sin(x)", "sin(x)+2", -9, 9, -1.5, 3.5, "osc:-1:1", "osc:-1:1");
  Run r = run(j);
  CHECK(r.diff.match());
  bool hub = false;
  for (const auto& v : r.oracle.vertices) hub = hub || (v.in_degree == 4 && v.out_degree == 4);
  CHECK(hub);
}

TEST_CASE("curve peaking just outside the window is an end") {
  Run r = run(testing::random_job(7));
  CHECK(r.diff.match());
  CHECK(r.oracle.ends == 3);
}

TEST_CASE("resolution stability") {
  for (std::uint64_t s : {1u, 4u, 9u, 13u}) {
    JobConfig j = testing::random_job(s);
    Run a = run(j, 2000), b = run(j, 4000);
    CHECK(a.oracle.vertices.size() == b.oracle.vertices.size());
    CHECK(a.oracle.ends == b.oracle.ends);
    CHECK(a.oracle.loops == b.oracle.loops);
    CHECK(a.diff.oracle_degrees == b.diff.oracle_degrees);
  }
}

TEST_CASE("too coarse a raster declares itself unreliable") {
  // Events at 0 and 0.01; 50 rows over [-0.5, 3] are 0.07 apart.
  JobConfig j = job("x^2", "x^2+0.01", -3, 3, -0.5, 3);
  OracleOptions oo{50, 1024, {}};
  CHECK_THROWS_AS(discrete_reeb(FunctionExpr::parse(j.c1), FunctionExpr::parse(j.c2), j.window, oo), OracleUnreliable);
}

TEST_CASE("a dropped vertex is reported") {
  Run r = run(job("x^2", "x^2+1", -3, 3, -0.5, 3, "+inf", "+inf"));
  ReebGraph g = r.sweep.graph;
  g.vertices.pop_back();
  OracleDiff d = compare(g, r.oracle);
  CHECK_FALSE(d.match());
  CHECK_FALSE(d.suspects.empty());
  CHECK_FALSE(d.describe().empty());
}

TEST_CASE("exclusion bands") {
  Window w;
  w.value_lo = -1;
  w.value_hi = 3;
  auto b = exclusion_bands({0.0, 1.0}, w, 0.02);
  REQUIRE(b.size() == 2);
  CHECK(b[0].first == doctest::Approx(-0.08));
  CHECK(b[0].second == doctest::Approx(0.08));
  CHECK(exclusion_bands({}, w).empty());
}

TEST_CASE("raster round trip") {
  Run r = run(job("x^2", "x^2+1", -3, 3, -0.5, 3, "+inf", "+inf"), 200);
  std::stringstream ss;
  write_raster(ss, r.oracle.raster);
  RasterRegion back = read_raster(ss);
  CHECK(back.levels == r.oracle.raster.levels);
  CHECK(back.xs.front() == r.oracle.raster.xs.front());
  CHECK(back.xs.back() == r.oracle.raster.xs.back());
  CHECK(back.runs == r.oracle.raster.runs);
  std::stringstream bad("RSRASTXX");
  CHECK_THROWS(read_raster(bad));
}
