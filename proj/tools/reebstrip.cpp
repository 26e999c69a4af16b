#include <algorithm>
#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "reebstrip/error.hpp"
#include "reebstrip/io.hpp"
#include "reebstrip/parallel.hpp"

using namespace reebstrip;

namespace {

struct Common {
  std::string config;
  std::vector<std::string> sets;  // key=value overrides
  std::string c1, c2;
  std::optional<double> x_lo, x_hi, v_lo, v_hi;
  std::optional<std::uint64_t> seed;
  std::string out, dot, svg;
  int threads = 0;
};

void add_common(CLI::App* app, Common& c, bool functions = true) {
  app->add_option("--config", c.config, "key = value config file");
  app->add_option("--set", c.sets, "override a config key, e.g. --set tail.c1.minus=limit:0");
  if (functions) {
    app->add_option("--c1", c.c1, "lower function");
    app->add_option("--c2", c.c2, "upper function");
  }
  app->add_option("--x-lo", c.x_lo);
  app->add_option("--x-hi", c.x_hi);
  app->add_option("--value-lo", c.v_lo);
  app->add_option("--value-hi", c.v_hi);
  app->add_option("--seed", c.seed, "RNG seed for probes");
  app->add_option("--out,-o", c.out, "JSON output path (default stdout)");
  app->add_option("--dot", c.dot, "write the graph as DOT");
  app->add_option("--svg", c.svg, "write the plane picture as SVG");
  app->add_option("--threads", c.threads, "worker threads (default REEBSTRIP_THREADS or all cores)");
}

JobConfig build_job(const Common& c, JobConfig job = {}) {
  if (!c.config.empty()) job = load_config(c.config, job);
  for (const auto& s : c.sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'", 0);
    set_config_value(job, s.substr(0, eq), s.substr(eq + 1));
  }
  if (!c.c1.empty()) job.c1 = c.c1;
  if (!c.c2.empty()) job.c2 = c.c2;
  if (c.x_lo) job.window.x_lo = *c.x_lo;
  if (c.x_hi) job.window.x_hi = *c.x_hi;
  if (c.v_lo) job.window.value_lo = *c.v_lo;
  if (c.v_hi) job.window.value_hi = *c.v_hi;
  if (c.seed) job.seed = *c.seed;
  if (job.c1.empty() || job.c2.empty()) throw ConfigError("both c1 and c2 are required", 0);
  return job;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
}

int emit_report(const PipelineResult& r, const Common& c) {
  Json j = to_json(make_report(r));
  write_text(c.out, j.dump(2) + "\n");
  if (!c.dot.empty()) write_text(c.dot, graph_to_dot(r.graph));
  if (!c.svg.empty())
    write_text(c.svg, graph_to_svg(r.graph, FunctionExpr::parse(r.job.c1), FunctionExpr::parse(r.job.c2), r.job.window));
  std::cerr << "done in " << r.seconds << " s\n";
  std::string lattice = r.classification.lattice_violation();
  if (!lattice.empty()) {
    std::cerr << "classification lattice violated: " << lattice << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reeb spaces of the level function on the region between two graphs"};
  app.require_subcommand(1);
  Common common;

  auto* classify = app.add_subcommand("classify", "classification, accumulation levels, non-normal sets, verdicts");
  add_common(classify, common);
  auto* sweep_cmd = app.add_subcommand("sweep", "full pipeline including the Reeb graph");
  add_common(sweep_cmd, common);
  auto* manifold = app.add_subcommand("verify-manifold", "regularity and critical-point probes on X");
  add_common(manifold, common);
  int m = 0;
  std::size_t probes = 0;
  manifold->add_option("--m", m, "dimension of X (2..8)");
  manifold->add_option("--probes", probes, "generic probes");
  auto* oracle = app.add_subcommand("oracle-compare", "sweep against the rasterized oracle");
  add_common(oracle, common);
  int K = 0, nx = 0;
  std::string raster;
  std::string preset_for_oracle;
  oracle->add_option("--K", K, "level rows");
  oracle->add_option("--nx", nx, "x samples");
  oracle->add_option("--raster", raster, "dump the raster to this file");
  oracle->add_option("--preset", preset_for_oracle, "use a preset's functions and oracle window");
  auto* preset = app.add_subcommand("preset", "run a named example");
  add_common(preset, common, false);
  std::string preset_name;
  std::optional<double> pa, pb, pq;
  bool list = false;
  preset->add_option("name", preset_name, "ex1-3, thm4-1, thm4-2, thm4-3");
  preset->add_option("--a", pa);
  preset->add_option("--b", pb);
  preset->add_option("--q", pq, "t0 in Q = (x + t0) sin^2 x (thm4-3)");
  preset->add_flag("--list", list, "list preset names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (common.threads > 0) set_worker_count(static_cast<unsigned>(common.threads));
    if (*classify) {
      PipelineOptions opt;
      opt.build_graph = false;
      return emit_report(run_pipeline(build_job(common), opt), common);
    }
    if (*sweep_cmd) return emit_report(run_pipeline(build_job(common)), common);
    if (*manifold) {
      JobConfig job = build_job(common);
      if (m) job.m = m;
      if (probes) job.probes = probes;
      FunctionExpr c1 = FunctionExpr::parse(job.c1), c2 = FunctionExpr::parse(job.c2);
      check_separation(c1, c2, job.window);
      auto s1 = isolate_critical(c1, Owner::C1, job.window, &job.tails);
      auto s2 = isolate_critical(c2, Owner::C2, job.window, &job.tails);
      auto comps = s1.components;
      comps.insert(comps.end(), s2.components.begin(), s2.components.end());
      Prop1Report rep = check_prop1(c1, c2, job.window, comps, {job.m, job.probes, job.seed});
      write_text(common.out, prop1_to_json(rep).dump(2) + "\n");
      return rep.ok() ? 0 : 2;
    }
    if (*oracle) {
      JobConfig job;
      std::vector<double> levels;
      if (!preset_for_oracle.empty()) {
        // Accumulation levels come from the full window; the comparison
        // runs on the smaller oracle window.
        Preset p = make_preset(preset_for_oracle);
        PipelineOptions po;
        po.build_graph = false;
        levels = run_pipeline(p.job, po).accumulation.distinct_levels(p.job.window.tol.tau_val);
        job = p.job;
        job.window = p.oracle_window;
      }
      job = build_job(common, job);
      if (K) job.K = K;
      if (nx) job.nx = nx;
      PipelineResult r = run_pipeline(job);
      if (!r.has_graph) throw Error("no graph to compare: " + r.diagnostics.back().message);
      for (double v : r.accumulation.distinct_levels(job.window.tol.tau_val)) levels.push_back(v);
      std::sort(levels.begin(), levels.end());
      OracleOptions oo{job.K, job.nx, exclusion_bands(levels, job.window, job.band)};
      DiscreteGraph d = discrete_reeb(FunctionExpr::parse(job.c1), FunctionExpr::parse(job.c2), job.window, oo);
      if (!raster.empty()) {
        std::ofstream f(raster, std::ios::binary);
        write_raster(f, d.raster);
      }
      OracleDiff diff = compare(r.graph, d, oo.exclude);
      write_text(common.out, diff_to_json(diff).dump(2) + "\n");
      return diff.match() ? 0 : 2;
    }
    if (*preset) {
      if (list) {
        for (const auto& n : preset_names()) std::cout << n << "\n";
        return 0;
      }
      if (preset_name.empty()) throw ConfigError("preset name required (see --list)", 0);
      PresetParams params;
      if (pa) params["a"] = *pa;
      if (pb) params["b"] = *pb;
      if (pq) params["q"] = *pq;
      Preset p = make_preset(preset_name, params);
      PipelineResult r = run_pipeline(build_job(common, p.job));
      int rc = emit_report(r, common);
      if (p.expect_digraph && r.graph.digraph != *p.expect_digraph) {
        std::cerr << "expected " << to_string(*p.expect_digraph) << ", got " << to_string(r.graph.digraph) << "\n";
        rc = 2;
      }
      if (p.expect_kind && r.graph.kind != *p.expect_kind) {
        std::cerr << "expected kind " << to_string(*p.expect_kind) << ", got " << to_string(r.graph.kind) << "\n";
        rc = 2;
      }
      return rc;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
