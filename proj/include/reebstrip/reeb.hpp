#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "reebstrip/slice.hpp"

namespace reebstrip {

enum class VertexOrigin { CriticalContour, NonNormalPoint, WindowCut, Unresolved };
enum class EndCause { XWindow, ValueWindow };
enum class ClosureKind { Compact, HalfOpen, Line };
enum class KindVerdict { Graph, EGraph, AGraph, EAGraph, WAGraph, EWAGraph };
enum class DigraphVerdict { IsReebDigraph, NotReebDigraph, WindowLimited };

std::string_view to_string(VertexOrigin v);
std::string_view to_string(EndCause v);
std::string_view to_string(ClosureKind v);
std::string_view to_string(KindVerdict v);
std::string_view to_string(DigraphVerdict v);

using Point2 = std::pair<double, double>;  // (level, x)

struct ReebVertex {
  int id = 0;
  double level = 0.0;
  VertexOrigin origin = VertexOrigin::CriticalContour;
  Contour contour;
  Point2 embed_point{0.0, 0.0};
  int in_degree = 0;   // edges arriving from below
  int out_degree = 0;  // edges leaving upward
  int record = -1;     // index into the non-normal records
};

/// An edge end: either a vertex or an open end at a window bound.
struct EdgeEnd {
  int vertex = -1;  // -1 for an open end
  double level = 0.0;
  EndCause cause = EndCause::XWindow;
  bool is_vertex() const { return vertex >= 0; }
};

struct ReebEdge {
  int id = 0;
  EdgeEnd lower, upper;
  ClosureKind closure = ClosureKind::Compact;
  double level_lo = 0.0, level_hi = 0.0;
  bool oriented = false;
  std::vector<Point2> polyline;
};

struct CharacteristicSequence {
  Owner owner = Owner::C1;
  Side direction = Side::Minus;
  std::vector<double> witnesses;  // critical x's, ordered toward the edge
};

struct NonNormalRecord {
  double p = 0.0;
  Contour contour;
  bool is_critical = false;
  TriState mild = TriState::WindowLimited;
  std::vector<CharacteristicSequence> sequences;
  std::optional<std::pair<double, double>> monotone_tail;
};

struct ReebGraph {
  std::vector<ReebVertex> vertices;
  std::vector<ReebEdge> edges;
  int ends = 0;
  int loops = 0;
  int components = 0;
  KindVerdict kind = KindVerdict::Graph;
  Confidence kind_confidence = Confidence::WindowLimited;
  DigraphVerdict digraph = DigraphVerdict::WindowLimited;
  TriState ea_digraph = TriState::WindowLimited;
  bool has_truncated = false;
  Diagnostics diagnostics;
};

struct SweepOptions {
  double eps_factor = 1e-6;       // matching offset = eps_factor * min event gap
  std::size_t max_events = 20000;
  std::size_t max_synthetic = 2000;
};

std::vector<NonNormalRecord> analyze_non_normal(const AccumulationReport& acc, const SliceContext& ctx);

ReebGraph sweep(const SliceContext& ctx, const AccumulationReport& acc, const std::vector<NonNormalRecord>& records,
                const SweepOptions& opt = {});

/// Fills digraph, ea_digraph and kind verdicts. `g` may be empty when no
/// sweep was run (has_graph = false).
void digraph_and_kind_verdicts(ReebGraph& g, const std::vector<NonNormalRecord>& records, const TailMetadata& tails,
                               bool has_graph = true);

/// Orients every edge upward. Throws PreconditionError for NotReebDigraph.
void orient(ReebGraph& g);

/// Vertex points (level, x) at a critical witness; polylines through
/// contour midpoints. The first coordinate always equals the level.
void embed_plane(ReebGraph& g);

}  // namespace reebstrip
