#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reebstrip/critical.hpp"

namespace reebstrip {

struct Evidence {
  std::string verdict;  // which field the reason supports, e.g. "ts"
  std::string reason;
};

struct QuadrupleClassification {
  TriState ts = TriState::WindowLimited;
  TriState dc = TriState::WindowLimited;
  TriState nts = TriState::WindowLimited;
  TriState ndc = TriState::WindowLimited;
  TriState pts = TriState::WindowLimited;
  TriState pdc = TriState::WindowLimited;
  TriState minimal = TriState::WindowLimited;
  std::vector<double> z_f;
  std::optional<double> z_m[2];  // [owner], from the x -> -inf side
  std::optional<double> z_M[2];  // [owner], from the x -> +inf side
  std::vector<Evidence> evidence;

  /// Empty when the implication lattice holds; otherwise the violated rule.
  std::string lattice_violation() const;
};

QuadrupleClassification classify_quadruple(const std::vector<CriticalComponent>& c1_components,
                                           const std::vector<CriticalComponent>& c2_components,
                                           const AccumulationReport& accumulation, const TailMetadata& tails,
                                           const Window& w);

struct SeparationReport {
  double min_gap = 0.0;
  double x_at_min = 0.0;
};

/// Minimum of c2 - c1 over a dense grid of the window, refined locally.
/// Throws SeparationError when the minimum is <= 0.
SeparationReport check_separation(const FunctionExpr& c1, const FunctionExpr& c2, const Window& w);

}  // namespace reebstrip
