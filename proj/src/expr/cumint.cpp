#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "node.hpp"
#include "reebstrip/error.hpp"
#include "reebstrip/expr.hpp"

namespace reebstrip {

namespace detail {

namespace {

constexpr long kAnchor = -64;  // checkpoints left of this are tail integrals
constexpr double kAbsFloor = 1e-280;
constexpr double kShortPiece = 1.0 / 64;

template <class F> double gk(F&& f, double a, double b, double tau_q) {
  if (a == b) return 0.0;
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  double err = 0.0, l1 = 0.0;
  double r = GK::integrate(f, a, b, 0, tau_q, &err, &l1);
  // Contributions below kAbsFloor are at the subnormal edge, and on short
  // pieces the error estimate is a roundoff floor; refinement there only
  // burns time.
  if (err > tau_q * l1 && l1 > kAbsFloor && b - a > kShortPiece) r = GK::integrate(f, a, b, 15, tau_q, &err, &l1);
  if (!std::isfinite(r)) throw QuadratureError("non-finite integral on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  return r;
}

// Sum of GK pieces of length at most 1, left to right.
template <class F> double chunked(F&& f, double a, double b, double tau_q) {
  if (a == b) return 0.0;
  if (a > b) return -chunked(f, b, a, tau_q);
  double s = 0.0;
  double lo = a;
  while (lo < b) {
    double hi = std::min(b, std::floor(lo) + 1.0);
    if (hi <= lo) hi = std::min(b, lo + 1.0);
    s += gk(f, lo, hi, tau_q);
    lo = hi;
  }
  return s;
}

template <class F> double left_tail(F&& f, double b, double tau_q) {
  thread_local boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0.0, l1 = 0.0;
  auto g = [&](double s) { return f(b - s); };
  double r = integrator.integrate(g, tau_q, &err, &l1);
  if (!std::isfinite(r)) throw QuadratureError("left tail integral does not converge at " + std::to_string(b));
  return r;
}

void probe_decay(const Node& kernel) {
  // The kernel must shrink toward -inf for the tail integral to exist.
  double prev = std::numeric_limits<double>::infinity();
  int growing = 0;
  double last = 0.0;
  for (int j = 4; j <= 12; ++j) {
    double t = -std::ldexp(1.0, j);
    double m = 0.0;
    for (int i = 0; i < 16; ++i) {
      double v = std::abs(kernel_eval(kernel, t + 0.37 * i));
      if (!std::isfinite(v)) throw QuadratureError("cumint kernel is not finite at t = " + std::to_string(t));
      m = std::max(m, v);
    }
    if (m > prev * 1.0000001 && m > 1e-300) ++growing;
    prev = m;
    last = m;
  }
  if (growing > 2 || last > 1e-8)
    throw QuadratureError("cumint kernel does not decay toward -inf; the integral over (-inf, x] diverges");
}

}  // namespace

double cumint_value(CumintCache& cache, double x) {
  if (!std::isfinite(x)) throw DomainError("cumint evaluated at a non-finite point");
  const Node& kernel = *cache.kernel;
  auto f = [&](double t) { return kernel_eval(kernel, t); };
  long k = static_cast<long>(std::floor(x / cache.step));
  double base;
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    if (!cache.probed) {
      probe_decay(kernel);
      cache.probed = true;
    }
    auto it = cache.checkpoints.find(k);
    if (it != cache.checkpoints.end()) {
      base = it->second;
    } else if (k <= kAnchor) {
      base = left_tail(f, k * cache.step, cache.tau_q);
      cache.checkpoints.emplace(k, base);
    } else {
      // Extend the chain of checkpoints from the anchor; order is fixed so
      // results do not depend on query history.
      auto last = cache.checkpoints.upper_bound(k);
      long j = kAnchor;
      double v;
      // find the largest cached checkpoint in [kAnchor, k)
      if (last != cache.checkpoints.begin()) {
        auto prev = std::prev(last);
        if (prev->first >= kAnchor) j = prev->first;
      }
      auto cj = cache.checkpoints.find(j);
      if (cj == cache.checkpoints.end()) {
        v = left_tail(f, j * cache.step, cache.tau_q);
        cache.checkpoints.emplace(j, v);
      } else {
        v = cj->second;
      }
      while (j < k) {
        auto nx = cache.checkpoints.find(j + 1);
        if (nx != cache.checkpoints.end()) {
          v = nx->second;
        } else {
          v += gk(f, j * cache.step, (j + 1) * cache.step, cache.tau_q);
          cache.checkpoints.emplace(j + 1, v);
        }
        ++j;
      }
      base = v;
    }
  }
  return base + chunked(f, k * cache.step, x, cache.tau_q);
}

}  // namespace detail

double integrate(const FunctionExpr& k, double a, double b, double tau_q) {
  auto f = [&](double t) { return k.eval(t); };
  if (std::isinf(a) && a < 0) {
    if (!std::isfinite(b)) throw DomainError("integrate: upper limit must be finite");
    return detail::left_tail(f, b, tau_q);
  }
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integrate: only (-inf, b] or finite limits are supported");
  return detail::chunked(f, a, b, tau_q);
}

}  // namespace reebstrip
