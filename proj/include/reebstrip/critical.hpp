#pragma once

#include <vector>

#include "reebstrip/common.hpp"
#include "reebstrip/expr.hpp"
#include "reebstrip/tails.hpp"
#include "reebstrip/window.hpp"

namespace reebstrip {

enum class ComponentKind { Point, CompactInterval, HalfLineLeft, HalfLineRight, FullLine };
std::string_view to_string(ComponentKind k);

/// One connected component of the critical set of c_i inside the window.
struct CriticalComponent {
  Owner owner = Owner::C1;
  ComponentKind kind = ComponentKind::Point;
  double x_lo = 0.0;
  double x_hi = 0.0;
  double value = 0.0;
  double value_tol = 0.0;  // uncertainty of `value` from root width and quadrature
  double d2 = 0.0;         // f'' at a Point
  bool certified = true;   // false for tolerance-based plateaus
  bool touch = false;      // f' vanishes without changing sign

  double x() const { return 0.5 * (x_lo + x_hi); }
};

struct CriticalSet {
  std::vector<CriticalComponent> components;  // sorted by x
  Diagnostics diagnostics;
};

/// Critical components of `f` on [w.x_lo, w.x_hi]. Tails (optional) allow
/// HalfLine kinds for plateaus reaching the window edge.
CriticalSet isolate_critical(const FunctionExpr& f, Owner owner, const Window& w,
                             const TailMetadata* tails = nullptr);

/// Sorted values, deduplicated at tau_val * max(1, |v|).
std::vector<double> critical_values(const std::vector<CriticalComponent>& comps, double tau_val = 1e-7);

struct AccumulationLevel {
  double p = 0.0;
  Side side = Side::Minus;
  Owner owner = Owner::C1;
  std::vector<double> witnesses;  // critical x's, ordered toward the window edge
  std::size_t count = 0;
  Confidence confidence = Confidence::WindowLimited;
  bool envelope = false;  // found by the envelope route
};

struct AccumulationReport {
  std::vector<AccumulationLevel> levels;
  Confidence confidence = Confidence::DeclaredTail;  // weakest over levels

  /// Distinct levels, merged at tau_val.
  std::vector<double> distinct_levels(double tau_val = 1e-7) const;
};

AccumulationReport detect_accumulation(const std::vector<CriticalComponent>& comps, const TailMetadata& tails,
                                       const Window& w);

}  // namespace reebstrip
