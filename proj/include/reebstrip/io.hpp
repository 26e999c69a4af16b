#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "reebstrip/classify.hpp"
#include "reebstrip/manifold.hpp"
#include "reebstrip/oracle.hpp"
#include "reebstrip/reeb.hpp"

namespace reebstrip {

struct JobConfig {
  std::string c1, c2;
  TailMetadata tails;
  Window window;
  int m = 2;
  std::uint64_t seed = 1;
  std::size_t probes = 10000;
  int K = 4000;
  int nx = 8192;
  double band = 0.02;  // oracle exclusion half-width, fraction of the value range
};

/// Plain-text config: one `key = value` per line, `#` starts a comment.
/// Keys: c1 c2 x_lo x_hi value_lo value_hi tail.c1.minus tail.c1.plus
/// tail.c2.minus tail.c2.plus tau_x tau_flat tau_val tau_q tau_rank n_acc
/// m seed probes K nx band. Throws ConfigError with the line number.
JobConfig parse_config(const std::string& text, JobConfig base = {});
JobConfig load_config(const std::string& path, JobConfig base = {});
/// Applies one key/value pair (same keys as the file).
void set_config_value(JobConfig& cfg, const std::string& key, const std::string& value, int line = 0);

struct Preset {
  std::string name;
  std::string description;
  JobConfig job;
  Window oracle_window;  // bounded window where the discrete oracle resolves every event
  std::optional<DigraphVerdict> expect_digraph;
  std::optional<KindVerdict> expect_kind;
};

using PresetParams = std::map<std::string, double>;

std::vector<std::string> preset_names();
/// Parameters: thm4-1 and thm4-2 take a; thm4-3 takes a, b and q (0 for
/// Q = x sin^2 x, otherwise t0 in Q = (x + t0) sin^2 x).
Preset make_preset(const std::string& name, const PresetParams& params = {});
/// The six presets compared against the oracle and probed on X.
std::vector<Preset> corpus_presets();

struct PipelineOptions {
  bool build_graph = true;
  SweepOptions sweep;
};

struct PipelineResult {
  JobConfig job;
  SeparationReport separation;
  CriticalSet critical[2];
  QuadrupleClassification classification;
  AccumulationReport accumulation;
  std::vector<NonNormalRecord> records;
  bool has_graph = false;
  ReebGraph graph;  // verdicts are filled even without a sweep
  Diagnostics diagnostics;
  double seconds = 0.0;

  std::vector<CriticalComponent> components() const;
};

PipelineResult run_pipeline(const JobConfig& job, const PipelineOptions& opt = {});

using Json = nlohmann::ordered_json;

/// Report document (schema "reebstrip-report/1", see docs/report.md).
struct ReportDoc {
  Json input;
  QuadrupleClassification classification;
  std::vector<double> z_f;
  std::vector<NonNormalRecord> non_normal;
  std::optional<ReebGraph> graph;
  KindVerdict kind = KindVerdict::EGraph;
  Confidence kind_confidence = Confidence::WindowLimited;
  DigraphVerdict digraph = DigraphVerdict::WindowLimited;
  TriState ea_digraph = TriState::WindowLimited;
  Confidence accumulation_confidence = Confidence::WindowLimited;
  Json extra;  // accumulation, diagnostics and timing, carried verbatim
};

ReportDoc make_report(const PipelineResult& r);
Json to_json(const ReportDoc& doc);
ReportDoc report_from_json(const Json& j);
Json graph_to_json(const ReebGraph& g);
ReebGraph graph_from_json(const Json& j);

std::string graph_to_dot(const ReebGraph& g);
/// Plane picture: the boundary curves c1, c2 over the window and the
/// embedded graph, level on the vertical axis.
std::string graph_to_svg(const ReebGraph& g, const FunctionExpr& c1, const FunctionExpr& c2, const Window& w);

Json prop1_to_json(const Prop1Report& r);
Json diff_to_json(const OracleDiff& d);

}  // namespace reebstrip
