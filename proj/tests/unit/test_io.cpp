#include <doctest.h>

#include <cmath>
#include <regex>

#include "jobs.hpp"
#include "reebstrip/error.hpp"
#include "reebstrip/io.hpp"

using namespace reebstrip;
using testing::job;

namespace {

int count(const std::string& s, const std::string& re) {
  std::regex r(re);
  return static_cast<int>(std::distance(std::sregex_iterator(s.begin(), s.end(), r), std::sregex_iterator()));
}

}  // namespace

TEST_CASE("config parsing") {
  JobConfig j = parse_config(
      "# strip\n"
      "c1 = sin(x)\n"
      "c2 = sin(x) + 1   # upper\n"
      "\n"
      "x_lo = -4\n"
      "x_hi = 4.5\n"
      "tail.c1.plus = osc:-1:1\n"
      "n_acc = 6\n"
      "K = 1000\n");
  CHECK(j.c1 == "sin(x)");
  CHECK(j.c2 == "sin(x) + 1");
  CHECK(j.window.x_lo == -4);
  CHECK(j.window.x_hi == 4.5);
  CHECK(j.tails.get(Owner::C1, Side::Plus).kind == TailKind::BoundedOscillation);
  CHECK(j.window.tol.n_acc == 6);
  CHECK(j.K == 1000);
}

TEST_CASE("config errors name the line") {
  auto line_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("c1 = x\nc2 = x+1\nbogus = 3\n") == 3);
  CHECK(line_of("c1 = x\nno equals sign\n") == 2);
  CHECK(line_of("x_lo = abc\n") == 1);
  CHECK(line_of("c1 = x\n\n\ntail.c2.minus = sideways\n") == 4);
  CHECK(line_of("K = -5\n") == 1);
  JobConfig j;
  CHECK_THROWS_AS(set_config_value(j, "nope", "1"), ConfigError);
}

TEST_CASE("presets") {
  auto names = preset_names();
  for (const char* n : {"ex1-3", "thm4-1", "thm4-2", "thm4-3"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  CHECK_THROWS(make_preset("nonexistent"));
  Preset p = make_preset("thm4-1", {{"a", 0.5}});
  CHECK(p.job.c2.find("0.5") != std::string::npos);
  REQUIRE(p.expect_digraph.has_value());
  CHECK(*p.expect_digraph == DigraphVerdict::NotReebDigraph);
  CHECK(*make_preset("thm4-1", {{"a", 0.0}}).expect_digraph == DigraphVerdict::IsReebDigraph);
  CHECK(make_preset("example1-3").job.c1 == make_preset("ex1-3").job.c1);
  Preset q = make_preset("thm4-3", {{"q", 1.0}});
  CHECK(*q.expect_digraph == DigraphVerdict::NotReebDigraph);
  CHECK(corpus_presets().size() == 6);
  for (const Preset& c : corpus_presets()) {
    CHECK_NOTHROW(FunctionExpr::parse(c.job.c1));
    CHECK(c.oracle_window.x_lo >= c.job.window.x_lo);
    CHECK(c.oracle_window.x_hi <= c.job.window.x_hi);
  }
}

TEST_CASE("report round trip") {
  for (const JobConfig& j : {job("x^2", "x^2+1", -3, 3, -0.5, 3, "+inf", "+inf"), make_preset("thm4-1", {{"a", 0.0}}).job}) {
    PipelineResult r = run_pipeline(j);
    std::string a = to_json(make_report(r)).dump(2);
    std::string b = to_json(report_from_json(Json::parse(a))).dump(2);
    CHECK(a == b);
    Json doc = Json::parse(a);
    CHECK(doc["schema"] == "reebstrip-report/1");
    CHECK(doc["graph"]["vertices"].size() == r.graph.vertices.size());
  }
}

TEST_CASE("report without a graph") {
  PipelineOptions opt;
  opt.build_graph = false;
  PipelineResult r = run_pipeline(job("x", "x+1", -3, 3, -3, 3), opt);
  ReportDoc d = make_report(r);
  CHECK_FALSE(d.graph.has_value());
  std::string a = to_json(d).dump(2);
  CHECK(to_json(report_from_json(Json::parse(a))).dump(2) == a);
  CHECK(Json::parse(a)["graph"].is_null());
  ReebGraph empty;
  CHECK(graph_from_json(graph_to_json(empty)).vertices.empty());
}

TEST_CASE("non-finite numbers become null") {
  ReebGraph g;
  ReebVertex v;
  v.level = NAN;
  g.vertices.push_back(v);
  Json j = graph_to_json(g);
  CHECK(j["vertices"][0]["level"].is_null());
  CHECK(std::isnan(graph_from_json(j).vertices[0].level));
}

TEST_CASE("dot and svg") {
  JobConfig j = job("x^2", "x^2+1", -3, 3, -0.5, 3, "+inf", "+inf");
  PipelineResult r = run_pipeline(j);
  std::string dot = graph_to_dot(r.graph);
  CHECK(count(dot, R"(\n  v\d+ \[)") == 2);
  CHECK(count(dot, R"(v\d+ -> v\d+)") == 1);
  CHECK(count(dot, R"(end\d+ \[shape=point)") == 2);
  CHECK(dot.find("rankdir=BT") != std::string::npos);
  ReebGraph g = r.graph;
  embed_plane(g);
  std::string svg = graph_to_svg(g, FunctionExpr::parse(j.c1), FunctionExpr::parse(j.c2), j.window);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(count(svg, "<circle") >= 2);
}
