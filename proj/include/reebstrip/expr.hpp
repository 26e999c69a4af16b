#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "reebstrip/dual.hpp"

namespace reebstrip {

namespace detail {
struct Node;
}

struct ParseOptions {
  double tau_q = 1e-10;  // relative tolerance for cumint quadrature
  std::string variable = "x";
};

/// Value and first two derivatives at a point.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Immutable differentiable expression in one variable.
///
/// Grammar (see docs/grammar.md): infix + - * /, `^` with an integer
/// exponent, sin cos exp atan sqrt, constants pi e, and `cumint(k)` which
/// denotes x -> integral of k(t) dt over (-inf, x]. The kernel of a cumint
/// is written in the variable `t`; everything else in `x`.
///
/// Copies share the tree. The only mutable state is the per-cumint
/// checkpoint cache, which is internally synchronized.
class FunctionExpr {
 public:
  FunctionExpr();  // the constant 0

  static FunctionExpr parse(std::string_view text, const ParseOptions& opts = {});
  static FunctionExpr constant(double c);

  double eval(double x) const;
  double deriv(double x) const;
  Jet jet(double x) const;

  /// Only the derivatives; cumint values are still computed when the
  /// derivative depends on them.
  Dual<Dual<double>> eval_dual2(double x) const;

  std::string print() const;

  /// True when the tree does not depend on its variable.
  bool is_constant() const;
  bool has_cumint() const;

  const detail::Node& root() const { return *root_; }

 private:
  explicit FunctionExpr(std::shared_ptr<const detail::Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const detail::Node> root_;

  friend class Parser;
};

/// Adaptive quadrature of the kernel expression `k` (variable t) over
/// [a, b]; used by cumint and directly by tests.
double integrate(const FunctionExpr& k, double a, double b, double tau_q = 1e-10);

}  // namespace reebstrip
