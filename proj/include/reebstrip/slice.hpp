#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "reebstrip/critical.hpp"

namespace reebstrip {

enum class ContourKind { Point, Compact, HalfUnboundedBelow, HalfUnboundedAbove, FullLine };
std::string_view to_string(ContourKind k);

enum TouchBits : int { TouchNone = 0, TouchC1 = 1, TouchC2 = 2 };

/// One connected component of {x : c1(x) <= p <= c2(x)}.
struct Contour {
  double lo = 0.0;  // clamped to the window when the contour leaves it
  double hi = 0.0;
  bool lo_at_edge = false;  // reaches x_lo
  bool hi_at_edge = false;  // reaches x_hi
  bool lo_unbounded = false;
  bool hi_unbounded = false;
  ContourKind kind = ContourKind::Compact;
  int touch_lo = TouchNone;  // which curve equals p at a finite endpoint
  int touch_hi = TouchNone;
  bool is_critical = false;
  bool truncated = false;  // leaves the window with no tail verdict
  std::vector<std::pair<Owner, double>> critical_points;  // matched critical x's

  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x, double slack) const {
    return (lo_unbounded || x >= lo - slack) && (hi_unbounded || x <= hi + slack);
  }
};

struct LevelSlice {
  double p = 0.0;
  std::vector<Contour> contours;  // increasing in x
};

/// Precomputed breakpoints (grid plus critical points) with c1, c2 values.
/// Between consecutive breakpoints both functions are monotone, so each
/// piece holds at most one root of c_i - p. Thread-safe for concurrent
/// level queries.
class SliceContext {
 public:
  SliceContext(FunctionExpr c1, FunctionExpr c2, Window w, TailMetadata tails,
               std::vector<CriticalComponent> components);

  LevelSlice slice(double p) const;

  const Window& window() const { return w_; }
  const TailMetadata& tails() const { return tails_; }
  const FunctionExpr& c(Owner o) const { return o == Owner::C1 ? c1_ : c2_; }
  const std::vector<CriticalComponent>& components() const { return comps_; }
  const std::vector<double>& breakpoints() const { return xs_; }

 private:
  FunctionExpr c1_, c2_;
  Window w_;
  TailMetadata tails_;
  std::vector<CriticalComponent> comps_;
  std::vector<double> xs_;
  std::vector<double> v_[2];
  std::vector<double> tmin_[2], tmax_[2];  // segment trees over pieces
  std::size_t leaves_ = 1;

  void build_tree(int k);
  void collect(int k, double p, std::size_t node, std::size_t lo, std::size_t hi, std::vector<std::size_t>& out) const;
  std::vector<std::pair<double, double>> sublevel(int k, double p) const;
  void assign_kind(Contour& c, double p) const;
};

/// Builds a context (critical isolation included) and slices once.
LevelSlice level_slice(const FunctionExpr& c1, const FunctionExpr& c2, double p, const Window& w,
                       const TailMetadata& tails);

/// Fills is_critical and critical_points: a contour is critical when it
/// contains a critical x of c_i with c_i(x) = p (tight per-point tolerance).
LevelSlice contour_criticality(LevelSlice s, const std::vector<CriticalComponent>& components, const Window& w);

/// Tight equality used for criticality.
bool critical_value_matches(const CriticalComponent& c, double p);

}  // namespace reebstrip
