#pragma once

#include <cstddef>

namespace reebstrip {

struct Tolerances {
  double tau_x = 1e-9;      // bisection width for roots and critical points
  double tau_flat = 1e-9;   // flatness, relative to the local derivative scale
  double tau_val = 1e-7;    // value clustering
  double tau_q = 1e-10;     // relative quadrature tolerance
  double tau_rank = 1e-7;   // singular-value threshold for rank estimates
  int n_acc = 8;            // witnesses required for an accumulation level
  std::size_t cells_per_unit = 200;
  std::size_t min_cells = 512;
  int max_refine = 6;
};

}  // namespace reebstrip
