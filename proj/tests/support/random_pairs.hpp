#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "reebstrip/expr.hpp"
#include "reebstrip/io.hpp"

namespace testing {

// c_i = polynomial of degree <= 4 + A sin(w x + phi) on [-2, 2], c2 lifted
// so that c2 - c1 >= 0.3 on a dense grid.
struct RandomPair {
  std::uint64_t seed = 0;
  std::string c1, c2;
  reebstrip::Window window;
};

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return v < 0 ? "(" + std::string(buf) + ")" : std::string(buf);
}

inline std::string random_function(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> deg(1, 4);
  int d = deg(rng);
  std::string s = num(u(rng));
  double fact = 1.0;
  for (int k = 1; k <= d; ++k) {
    fact *= k;
    s += "+" + num(u(rng) * 1.5 / fact) + "*x^" + std::to_string(k);
  }
  double a = 0.8 * (u(rng) + 1.0) / 2.0;
  double w = 0.5 + 2.0 * (u(rng) + 1.0);
  double phi = 3.14159 * u(rng);
  s += "+" + num(a) + "*sin(" + num(w) + "*x+" + num(phi) + ")";
  return s;
}

inline RandomPair random_pair(std::uint64_t seed) {
  using reebstrip::FunctionExpr;
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 17);
  RandomPair r;
  r.seed = seed;
  r.window.x_lo = -2;
  r.window.x_hi = 2;
  std::string a = random_function(rng), b = random_function(rng);
  FunctionExpr fa = FunctionExpr::parse(a), fb = FunctionExpr::parse(b);
  double gap = INFINITY, lo = INFINITY, hi = -INFINITY;
  for (int i = 0; i <= 4000; ++i) {
    double x = -2 + 4.0 * i / 4000;
    gap = std::min(gap, fb.eval(x) - fa.eval(x));
  }
  double shift = 0.3 - gap;
  r.c1 = a;
  r.c2 = b + "+" + num(shift);
  for (int i = 0; i <= 4000; ++i) {
    double x = -2 + 4.0 * i / 4000;
    lo = std::min(lo, fa.eval(x));
    hi = std::max(hi, fb.eval(x) + shift);
  }
  // Value bounds cut through the strip on about half the pairs.
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double span = hi - lo;
  r.window.value_lo = u(rng) < 0.5 ? lo - 0.1 * span : lo + 0.2 * span * u(rng);
  r.window.value_hi = u(rng) < 0.5 ? hi + 0.1 * span : hi - 0.2 * span * u(rng);
  return r;
}

inline reebstrip::JobConfig random_job(std::uint64_t seed) {
  RandomPair p = random_pair(seed);
  reebstrip::JobConfig j;
  j.c1 = p.c1;
  j.c2 = p.c2;
  j.window = p.window;
  return j;
}

}  // namespace testing
