#pragma once

#include "reebstrip/common.hpp"

namespace reebstrip {

enum class TailKind { Unknown, FiniteLimit, DivergesPlus, DivergesMinus, BoundedOscillation };

/// Declared asymptotic behaviour of one function in one direction.
/// FiniteLimit stores L in `lo` (and `hi`).
struct Tail {
  TailKind kind = TailKind::Unknown;
  double lo = 0.0;
  double hi = 0.0;

  static Tail unknown() { return {}; }
  static Tail limit(double L) { return {TailKind::FiniteLimit, L, L}; }
  static Tail diverges_plus() { return {TailKind::DivergesPlus, 0.0, 0.0}; }
  static Tail diverges_minus() { return {TailKind::DivergesMinus, 0.0, 0.0}; }
  static Tail oscillation(double lo, double hi) { return {TailKind::BoundedOscillation, lo, hi}; }

  bool declared() const { return kind != TailKind::Unknown; }
  std::string describe() const;
  /// Inverse of describe(): "unknown", "limit:L", "+inf", "-inf", "osc:lo:hi".
  static Tail parse(std::string_view text);
};

struct TailMetadata {
  Tail tails[2][2];  // [owner][side]

  const Tail& get(Owner o, Side s) const { return tails[index(o)][index(s)]; }
  Tail& get(Owner o, Side s) { return tails[index(o)][index(s)]; }
  bool all_declared() const;
  /// Throws PreconditionError on lo >= hi or non-finite limits.
  void validate() const;
};

}  // namespace reebstrip
