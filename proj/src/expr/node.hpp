#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace reebstrip::detail {

enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Exp, Atan, Sqrt, CumInt };

struct CumintCache;

struct Node {
  Op op = Op::Const;
  double value = 0.0;        // Const
  std::string name;          // Const: "pi"/"e" or empty; Var: variable name
  int exponent = 0;          // Pow
  std::shared_ptr<const Node> a, b;
  std::shared_ptr<CumintCache> cache;  // CumInt; `a` is the kernel
};

using NodePtr = std::shared_ptr<const Node>;

/// Checkpoint memo for x -> integral over (-inf, x] of the kernel. Checkpoint
/// k sits at x = k * step and stores the full tail integral up to it.
struct CumintCache {
  NodePtr kernel;
  double tau_q = 1e-10;
  double step = 1.0;
  bool probed = false;
  std::mutex mu;
  std::map<long, double> checkpoints;
};

double kernel_eval(const Node& kernel, double t);
double cumint_value(CumintCache& cache, double x);

}  // namespace reebstrip::detail
