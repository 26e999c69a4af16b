#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "jobs.hpp"
#include "reebstrip/error.hpp"
#include "reebstrip/io.hpp"
#include "reebstrip/reeb.hpp"

using namespace reebstrip;
using testing::job;

namespace {

const ReebVertex* at_level(const ReebGraph& g, double p) {
  for (const auto& v : g.vertices)
    if (std::abs(v.level - p) < 1e-6) return &v;
  return nullptr;
}

int count_closure(const ReebGraph& g, ClosureKind k) {
  return static_cast<int>(std::count_if(g.edges.begin(), g.edges.end(), [&](const ReebEdge& e) { return e.closure == k; }));
}

}  // namespace

TEST_CASE("parabola strip") {
  PipelineResult r = run_pipeline(job("x^2", "x^2+1", -3, 3, -0.5, 3, "+inf", "+inf"));
  REQUIRE(r.has_graph);
  const ReebGraph& g = r.graph;
  REQUIRE(g.vertices.size() == 2);
  const ReebVertex* lo = at_level(g, 0.0);
  const ReebVertex* mid = at_level(g, 1.0);
  REQUIRE(lo);
  REQUIRE(mid);
  CHECK(lo->in_degree == 0);
  CHECK(lo->out_degree == 1);
  CHECK(mid->in_degree == 1);
  CHECK(mid->out_degree == 2);
  CHECK(lo->origin == VertexOrigin::CriticalContour);
  CHECK(g.edges.size() == 3);
  CHECK(count_closure(g, ClosureKind::Compact) == 1);
  CHECK(count_closure(g, ClosureKind::HalfOpen) == 2);
  CHECK(g.ends == 2);
  CHECK(g.loops == 0);
  CHECK(g.components == 1);
  for (const auto& e : g.edges) {
    CHECK(e.level_lo < e.level_hi);
    if (!e.upper.is_vertex()) CHECK(e.upper.cause == EndCause::ValueWindow);
  }
  CHECK(g.kind == KindVerdict::EGraph);
  CHECK(g.digraph == DigraphVerdict::IsReebDigraph);
}

TEST_CASE("parallel lines are one line edge") {
  PipelineResult r = run_pipeline(job("x", "x+1", -10, 10, -3, 3, "-inf", "+inf"));
  const ReebGraph& g = r.graph;
  CHECK(g.vertices.empty());
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].closure == ClosureKind::Line);
  CHECK(g.ends == 2);
}

TEST_CASE("constant pair is one compact edge") {
  JobConfig j = job("-1", "1", -10, 10, -2, 2);
  for (Side s : {Side::Minus, Side::Plus}) {
    j.tails.get(Owner::C1, s) = Tail::limit(-1);
    j.tails.get(Owner::C2, s) = Tail::limit(1);
  }
  const ReebGraph g = run_pipeline(j).graph;
  REQUIRE(g.vertices.size() == 2);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].closure == ClosureKind::Compact);
  CHECK(g.ends == 0);
  CHECK(g.kind == KindVerdict::Graph);
}

TEST_CASE("sine strip merges everything at level one") {
  JobConfig j = job("sin(x)", "sin(x)+2", -9, 9, -1.5, 3.5, "osc:-1:1", "osc:-1:1");
  for (Side s : {Side::Minus, Side::Plus}) j.tails.get(Owner::C2, s) = Tail::oscillation(1, 3);
  const ReebGraph g = run_pipeline(j).graph;
  // c1 maxima and c2 minima share the level 1, where the slice is all of R.
  const ReebVertex* hub = at_level(g, 1.0);
  REQUIRE(hub);
  CHECK(hub->in_degree == 4);
  CHECK(hub->out_degree == 4);
  CHECK(g.vertices.size() == 7);
  CHECK(g.edges.size() == 8);
  CHECK(g.ends == 2);
  CHECK(g.loops == 0);
  CHECK(g.loops == static_cast<int>(g.edges.size()) - static_cast<int>(g.vertices.size()) - g.ends + g.components);
}

TEST_CASE("decaying touch points") {
  PipelineResult a0 = run_pipeline(make_preset("thm4-1", {{"a", 0.0}}).job);
  REQUIRE(a0.records.size() == 1);
  CHECK(std::abs(a0.records[0].p) < 1e-6);
  CHECK(a0.records[0].is_critical);
  CHECK(a0.records[0].mild == TriState::Yes);
  CHECK(a0.graph.kind == KindVerdict::EAGraph);
  CHECK(a0.graph.digraph == DigraphVerdict::IsReebDigraph);
  const ReebVertex* v = at_level(a0.graph, 0.0);
  REQUIRE(v);
  CHECK(v->origin == VertexOrigin::NonNormalPoint);
  CHECK(v->record == 0);

  PipelineResult a5 = run_pipeline(make_preset("thm4-1", {{"a", 0.5}}).job);
  REQUIRE(a5.records.size() == 1);
  CHECK_FALSE(a5.records[0].is_critical);
  CHECK(a5.graph.digraph == DigraphVerdict::NotReebDigraph);
  ReebGraph g = a5.graph;
  CHECK_THROWS_AS(orient(g), PreconditionError);
}

TEST_CASE("verdicts without a graph") {
  ReebGraph g;
  TailMetadata t;
  digraph_and_kind_verdicts(g, {}, t, false);
  CHECK(g.kind == KindVerdict::EGraph);
  CHECK(g.kind_confidence == Confidence::WindowLimited);
  NonNormalRecord wild;
  wild.is_critical = true;
  wild.mild = TriState::No;
  ReebGraph h;
  digraph_and_kind_verdicts(h, {wild}, t, false);
  CHECK(h.kind == KindVerdict::EWAGraph);
  CHECK(h.ea_digraph == TriState::No);
}

TEST_CASE("orientation") {
  ReebGraph g = run_pipeline(job("x^2", "x^2+1", -3, 3, -0.5, 3, "+inf", "+inf")).graph;
  orient(g);
  for (const auto& e : g.edges) {
    CHECK(e.oriented);
    CHECK(e.level_lo < e.level_hi);
  }
  CHECK(at_level(g, 0.0)->out_degree == 1);
  CHECK(at_level(g, 1.0)->in_degree == 1);
  CHECK(at_level(g, 1.0)->out_degree == 2);
}

TEST_CASE("plane embedding is a section of the level map") {
  ReebGraph g = run_pipeline(job("x^2", "x^2+1", -3, 3, -0.5, 3, "+inf", "+inf")).graph;
  embed_plane(g);
  const ReebVertex* lo = at_level(g, 0.0);
  CHECK(lo->embed_point.first == doctest::Approx(0.0));
  CHECK(std::abs(lo->embed_point.second) < 1e-6);
  for (const auto& e : g.edges) {
    REQUIRE(e.polyline.size() >= 2);
    for (std::size_t i = 1; i < e.polyline.size(); ++i) CHECK(e.polyline[i - 1].first < e.polyline[i].first);
  }

  ReebGraph l = run_pipeline(job("x", "x+1", -10, 10, -3, 3, "-inf", "+inf")).graph;
  embed_plane(l);
  for (const auto& [p, x] : l.edges.at(0).polyline) CHECK(x == doctest::Approx(p - 0.5).epsilon(1e-9));

  JobConfig j = job("-1", "1", -10, 10, -2, 2);
  for (Side s : {Side::Minus, Side::Plus}) {
    j.tails.get(Owner::C1, s) = Tail::limit(-1);
    j.tails.get(Owner::C2, s) = Tail::limit(1);
  }
  ReebGraph c = run_pipeline(j).graph;
  embed_plane(c);
  for (const auto& pt : c.edges.at(0).polyline) CHECK(std::abs(pt.second) < 1e-9);
}
