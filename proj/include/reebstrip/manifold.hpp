#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reebstrip/critical.hpp"
#include "reebstrip/expr.hpp"
#include "reebstrip/window.hpp"

namespace reebstrip {

/// A point (x1, x2, y1..y_{m-1}) on X = {F = 0} with
/// F = (x1 - c1(x2)) (c2(x2) - x1) - sum y_j^2. The level is x1.
struct ManifoldProbe {
  int m = 2;
  std::vector<double> point;
  double F = 0.0;
  std::vector<double> gradient;
  bool boundary = false;
  Owner owner = Owner::C1;  // sheet for boundary probes
  bool predicted_critical = false;
  int observed_rank = 1;
  double sigma = 0.0;  // singular value of the projected differential
};

/// Evaluates F, its gradient and the rank of d(x1) on the tangent space.
ManifoldProbe make_probe(const FunctionExpr& c1, const FunctionExpr& c2, std::vector<double> point,
                         double tau_rank = 1e-7);

/// n seeded probes on X over the window: every tenth is a boundary probe
/// (y = 0 on one sheet), the rest lie in the open region with y on the
/// sphere of radius sqrt((x1 - c1)(c2 - x1)).
std::vector<ManifoldProbe> sample_on_X(const FunctionExpr& c1, const FunctionExpr& c2, int m, const Window& w,
                                       std::size_t n, std::uint64_t seed = 1);

struct RegularityVerdict {
  bool pass = false;
  std::string partial;  // partial derivative that certifies (or fails) regularity
  double value = 0.0;
};

/// Throws PreconditionError when the probe is not on X.
RegularityVerdict check_regularity(const ManifoldProbe& probe, const Tolerances& tol = {});

struct Prop1Options {
  int m = 2;
  std::size_t n = 10000;
  std::uint64_t seed = 1;
};

struct Prop1Report {
  std::size_t probes = 0;
  std::size_t regularity_failures = 0;
  std::size_t predicted = 0;          // probes at predicted critical points
  std::size_t predicted_regular = 0;  // of those, observed rank 1
  std::size_t rank0 = 0;              // generic probes observed at rank 0
  std::size_t unexplained_rank0 = 0;  // rank 0 and not flat-connected to a predicted point
  bool morse_applicable = false;
  std::size_t morse_checked = 0;
  std::size_t morse_failures = 0;
  double min_morse_det = 0.0;
  std::vector<std::string> disagreements;
  bool ok() const { return regularity_failures == 0 && predicted_regular == 0 && unexplained_rank0 == 0 && morse_failures == 0; }
};

/// Rank of d(x1)|X at the predicted critical points (c_i(x), x, 0),
/// x in S(c_i), and at n generic probes. A generic rank-0 probe agrees when
/// the sheet is numerically flat all the way to a predicted point. When
/// both functions are Morse on the window, the restricted Hessian at each
/// critical point must be nondegenerate.
Prop1Report check_prop1(const FunctionExpr& c1, const FunctionExpr& c2, const Window& w,
                        const std::vector<CriticalComponent>& components, const Prop1Options& opt = {});

}  // namespace reebstrip
