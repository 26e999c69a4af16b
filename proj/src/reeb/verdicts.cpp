#include <algorithm>

#include "reebstrip/error.hpp"
#include "reebstrip/reeb.hpp"

namespace reebstrip {

std::string_view to_string(VertexOrigin v) {
  switch (v) {
    case VertexOrigin::CriticalContour: return "CriticalContour";
    case VertexOrigin::NonNormalPoint: return "NonNormalPoint";
    case VertexOrigin::WindowCut: return "WindowCut";
    case VertexOrigin::Unresolved: return "Unresolved";
  }
  return "?";
}

std::string_view to_string(EndCause v) { return v == EndCause::XWindow ? "XWindow" : "ValueWindow"; }

std::string_view to_string(ClosureKind v) {
  switch (v) {
    case ClosureKind::Compact: return "Compact";
    case ClosureKind::HalfOpen: return "HalfOpen";
    case ClosureKind::Line: return "Line";
  }
  return "?";
}

std::string_view to_string(KindVerdict v) {
  switch (v) {
    case KindVerdict::Graph: return "Graph";
    case KindVerdict::EGraph: return "EGraph";
    case KindVerdict::AGraph: return "AGraph";
    case KindVerdict::EAGraph: return "EAGraph";
    case KindVerdict::WAGraph: return "WAGraph";
    case KindVerdict::EWAGraph: return "EWAGraph";
  }
  return "?";
}

std::string_view to_string(DigraphVerdict v) {
  switch (v) {
    case DigraphVerdict::IsReebDigraph: return "IsReebDigraph";
    case DigraphVerdict::NotReebDigraph: return "NotReebDigraph";
    case DigraphVerdict::WindowLimited: return "WindowLimited";
  }
  return "?";
}

void digraph_and_kind_verdicts(ReebGraph& g, const std::vector<NonNormalRecord>& records, const TailMetadata& tails,
                               bool has_graph) {
  bool declared = tails.all_declared();
  bool truncated = g.has_truncated;
  for (const auto& r : records) truncated = truncated || r.contour.truncated;

  bool non_critical = std::any_of(records.begin(), records.end(), [](const auto& r) { return !r.is_critical; });
  if (non_critical) g.digraph = DigraphVerdict::NotReebDigraph;
  else if (truncated || !declared) g.digraph = DigraphVerdict::WindowLimited;
  else g.digraph = DigraphVerdict::IsReebDigraph;

  if (!records.empty()) g.ea_digraph = TriState::No;
  else g.ea_digraph = declared ? TriState::Yes : TriState::WindowLimited;

  g.kind_confidence = declared ? Confidence::DeclaredTail : Confidence::WindowLimited;
  if (!records.empty()) {
    bool any_no = std::any_of(records.begin(), records.end(), [](const auto& r) { return r.mild == TriState::No; });
    bool all_yes = std::all_of(records.begin(), records.end(), [](const auto& r) { return r.mild == TriState::Yes; });
    if (any_no) g.kind = KindVerdict::EWAGraph;
    else if (all_yes) g.kind = KindVerdict::EAGraph;
    else {
      g.kind = KindVerdict::EWAGraph;
      g.kind_confidence = Confidence::WindowLimited;
    }
  } else if (!has_graph) {
    g.kind = KindVerdict::EGraph;
    g.kind_confidence = Confidence::WindowLimited;
  } else {
    g.kind = g.ends > 0 ? KindVerdict::EGraph : KindVerdict::Graph;
  }
}

void orient(ReebGraph& g) {
  if (g.digraph == DigraphVerdict::NotReebDigraph)
    throw PreconditionError("orient: a non-critical non-normal level exists, the upward orientation is not a Reeb digraph");
  for (auto& e : g.edges) e.oriented = true;
}

void embed_plane(ReebGraph& g) {
  for (auto& v : g.vertices) {
    double x = v.contour.mid();
    if (v.origin == VertexOrigin::CriticalContour && !v.contour.critical_points.empty())
      x = std::clamp(v.contour.critical_points.front().second, v.contour.lo, v.contour.hi);
    v.embed_point = {v.level, x};
  }
  for (auto& e : g.edges) {
    if (e.polyline.empty()) continue;
    if (e.lower.is_vertex()) e.polyline.front() = g.vertices[e.lower.vertex].embed_point;
    if (e.upper.is_vertex()) e.polyline.back() = g.vertices[e.upper.vertex].embed_point;
  }
}

}  // namespace reebstrip
