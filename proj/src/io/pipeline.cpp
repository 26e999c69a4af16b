#include <chrono>

#include "reebstrip/error.hpp"
#include "reebstrip/io.hpp"

namespace reebstrip {

std::vector<CriticalComponent> PipelineResult::components() const {
  std::vector<CriticalComponent> all = critical[0].components;
  all.insert(all.end(), critical[1].components.begin(), critical[1].components.end());
  return all;
}

PipelineResult run_pipeline(const JobConfig& job, const PipelineOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  PipelineResult r;
  r.job = job;
  const Window& w = job.window;
  w.validate();
  job.tails.validate();
  FunctionExpr c1 = FunctionExpr::parse(job.c1), c2 = FunctionExpr::parse(job.c2);
  r.separation = check_separation(c1, c2, w);
  r.critical[0] = isolate_critical(c1, Owner::C1, w, &job.tails);
  r.critical[1] = isolate_critical(c2, Owner::C2, w, &job.tails);
  std::vector<CriticalComponent> all = r.components();
  r.accumulation = detect_accumulation(all, job.tails, w);
  r.classification = classify_quadruple(r.critical[0].components, r.critical[1].components, r.accumulation, job.tails, w);
  SliceContext ctx(c1, c2, w, job.tails, std::move(all));
  r.records = analyze_non_normal(r.accumulation, ctx);
  for (int i = 0; i < 2; ++i)
    r.diagnostics.insert(r.diagnostics.end(), r.critical[i].diagnostics.begin(), r.critical[i].diagnostics.end());
  if (opt.build_graph) {
    try {
      r.graph = sweep(ctx, r.accumulation, r.records, opt.sweep);
      r.has_graph = true;
    } catch (const PreconditionError& e) {
      r.diagnostics.push_back({"no-graph", e.what(), w.x_lo, w.x_hi});
    }
  }
  digraph_and_kind_verdicts(r.graph, r.records, job.tails, r.has_graph);
  r.diagnostics.insert(r.diagnostics.end(), r.graph.diagnostics.begin(), r.graph.diagnostics.end());
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace reebstrip
