#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "reebstrip/expr.hpp"
#include "reebstrip/reeb.hpp"
#include "reebstrip/window.hpp"

namespace reebstrip {

using Band = std::pair<double, double>;
using DegreePair = std::pair<int, int>;  // (in, out)

struct OracleOptions {
  int K = 4000;       // level rows
  int nx = 8192;      // x samples
  std::vector<Band> exclude;  // level bands left out of the comparison
};

/// Rasterized region: rows of sample-index runs with c1 <= p <= c2.
struct RasterRegion {
  std::vector<double> levels;
  std::vector<double> xs;
  std::vector<std::vector<std::pair<int, int>>> runs;  // per row, inclusive index ranges
};

struct DiscreteVertex {
  double level = 0.0;
  int row = 0;
  int in_degree = 0, out_degree = 0;
};

struct DiscreteGraph {
  RasterRegion raster;
  std::vector<DiscreteVertex> vertices;
  int edges = 0;
  int ends = 0;
  int loops = 0;
  int components = 0;
  double min_event_gap = 0.0;
};

/// Brute-force construction from dense sign sampling. Throws
/// OracleUnreliable when the row spacing is not below half of the smallest
/// gap between distinct event values outside the excluded bands.
DiscreteGraph discrete_reeb(const FunctionExpr& c1, const FunctionExpr& c2, const Window& w,
                            const OracleOptions& opt = {});

struct OracleDiff {
  std::vector<DegreePair> sweep_degrees, oracle_degrees;  // sorted, (1,1) and excluded bands removed
  int sweep_loops = 0, oracle_loops = 0;
  int sweep_ends = 0, oracle_ends = 0;
  std::vector<double> suspects;  // levels of unmatched vertices
  bool match() const {
    return sweep_degrees == oracle_degrees && sweep_loops == oracle_loops && sweep_ends == oracle_ends;
  }
  std::string describe() const;
};

OracleDiff compare(const ReebGraph& g, const DiscreteGraph& d, const std::vector<Band>& exclude = {});

/// Bands of half-width `frac` times the value range around each level.
std::vector<Band> exclusion_bands(const std::vector<double>& levels, const Window& w, double frac = 0.02);

/// Flat binary dump. Layout (little endian): "RSRASTER", u32 version = 1,
/// u32 rows, u32 nx, f64 x_lo, f64 x_hi, then per row f64 level, u32 run
/// count and that many (u32 first, u32 last) index pairs.
void write_raster(std::ostream& os, const RasterRegion& r);
RasterRegion read_raster(std::istream& is);

}  // namespace reebstrip
