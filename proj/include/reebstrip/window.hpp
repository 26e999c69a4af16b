#pragma once

#include "reebstrip/tolerances.hpp"

namespace reebstrip {

/// Finite domain window for x and level window for p.
struct Window {
  double x_lo = -10.0;
  double x_hi = 10.0;
  double value_lo = -10.0;
  double value_hi = 10.0;
  Tolerances tol{};

  double width() const { return x_hi - x_lo; }
  /// Throws PreconditionError unless x_lo < x_hi and value_lo < value_hi.
  void validate() const;
};

}  // namespace reebstrip
