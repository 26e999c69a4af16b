#include "reebstrip/manifold.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>

#include "reebstrip/error.hpp"
#include "reebstrip/parallel.hpp"

namespace reebstrip {

namespace {

constexpr std::size_t kMaxMessages = 20;
constexpr double kMorseD2 = 1e-6;
constexpr int kFlatSamples = 64;

Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& g) {
  Eigen::MatrixXd gm = g;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gm);
  Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(g.size() - 1);
}

double boundary_sigma(const FunctionExpr& f, double x) {
  double d = f.deriv(x);
  return std::abs(d) / std::sqrt(1.0 + d * d);
}

std::string fmt_point(const std::vector<double>& p) {
  std::ostringstream os;
  os.precision(10);
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ')';
  return os.str();
}

std::vector<double> component_samples(const CriticalComponent& c, const Window& w) {
  double lo = std::max(c.x_lo, w.x_lo), hi = std::min(c.x_hi, w.x_hi);
  if (c.kind == ComponentKind::Point) return {c.x()};
  if (lo > hi) return {};
  return {lo, 0.5 * (lo + hi), hi};
}

}  // namespace

ManifoldProbe make_probe(const FunctionExpr& c1, const FunctionExpr& c2, std::vector<double> point, double tau_rank) {
  if (point.size() < 3 || point.size() > 9) throw PreconditionError("manifold probe: m must be between 2 and 8");
  ManifoldProbe pr;
  pr.m = static_cast<int>(point.size()) - 1;
  double x1 = point[0], x2 = point[1];
  Jet a = c1.jet(x2), b = c2.jet(x2);
  double ysq = 0.0;
  for (std::size_t j = 2; j < point.size(); ++j) ysq += point[j] * point[j];
  pr.F = (x1 - a.value) * (b.value - x1) - ysq;
  Eigen::VectorXd g(point.size());
  g(0) = a.value + b.value - 2.0 * x1;
  g(1) = -a.d1 * (b.value - x1) + (x1 - a.value) * b.d1;
  for (std::size_t j = 2; j < point.size(); ++j) g(j) = -2.0 * point[j];
  pr.gradient.assign(g.data(), g.data() + g.size());
  pr.point = std::move(point);
  if (g.norm() == 0.0) {
    pr.sigma = 0.0;
    pr.observed_rank = 0;
    return pr;
  }
  Eigen::MatrixXd d = tangent_basis(g).row(0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d);
  pr.sigma = svd.singularValues().minCoeff();
  pr.observed_rank = pr.sigma > tau_rank ? 1 : 0;
  return pr;
}

std::vector<ManifoldProbe> sample_on_X(const FunctionExpr& c1, const FunctionExpr& c2, int m, const Window& w,
                                       std::size_t n, std::uint64_t seed) {
  if (m < 2 || m > 8) throw PreconditionError("sample_on_X: m must be between 2 and 8");
  std::vector<ManifoldProbe> out(n);
  parallel_for(n, [&](std::size_t i) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * (i + 1));
    std::uniform_real_distribution<double> ux(w.x_lo, w.x_hi), ut(0.0, 1.0);
    double x2 = ux(rng);
    double lo = c1.eval(x2), hi = c2.eval(x2);
    if (!(hi > lo)) throw SeparationError("sample_on_X: c1 >= c2", x2, hi - lo);
    std::vector<double> p(static_cast<std::size_t>(m) + 1, 0.0);
    p[1] = x2;
    bool boundary = i % 10 == 9;
    Owner owner = Owner::C1;
    if (boundary) {
      owner = (rng() & 1) ? Owner::C2 : Owner::C1;
      p[0] = owner == Owner::C1 ? lo : hi;
    } else {
      double t = ut(rng);
      while (t == 0.0) t = ut(rng);
      p[0] = lo + t * (hi - lo);
      double r = std::sqrt(std::max(0.0, (p[0] - lo) * (hi - p[0])));
      std::normal_distribution<double> nd;
      double norm = 0.0;
      while (norm == 0.0) {
        norm = 0.0;
        for (int j = 2; j <= m; ++j) norm += (p[j] = nd(rng)) * p[j];
      }
      norm = std::sqrt(norm);
      for (int j = 2; j <= m; ++j) p[j] *= r / norm;
      owner = p[0] - lo <= hi - p[0] ? Owner::C1 : Owner::C2;
    }
    out[i] = make_probe(c1, c2, std::move(p), w.tol.tau_rank);
    out[i].boundary = boundary;
    out[i].owner = owner;
  });
  return out;
}

RegularityVerdict check_regularity(const ManifoldProbe& pr, const Tolerances& tol) {
  double x1 = pr.point[0];
  double ysq = 0.0;
  for (std::size_t j = 2; j < pr.point.size(); ++j) ysq += pr.point[j] * pr.point[j];
  double g0 = pr.gradient[0];
  // (x1 - c1) + (c2 - x1) = c2 - c1 and the product is ysq + F.
  double scale = std::abs(g0) * std::abs(x1) + ysq + std::abs(pr.F) + 1.0;
  if (std::abs(pr.F) > tol.tau_val * scale) throw PreconditionError("check_regularity: probe is not on X (F = " + std::to_string(pr.F) + ")");
  std::size_t jmax = 0;
  for (std::size_t j = 2; j < pr.point.size(); ++j)
    if (jmax == 0 || std::abs(pr.point[j]) > std::abs(pr.point[jmax])) jmax = j;
  if (jmax && std::abs(pr.gradient[jmax]) > tol.tau_flat)
    return {true, "dF/dy" + std::to_string(jmax - 1), pr.gradient[jmax]};
  if (std::abs(g0) > tol.tau_flat) return {true, "dF/dx1", g0};
  if (std::abs(pr.gradient[1]) > tol.tau_flat) return {true, "dF/dx2", pr.gradient[1]};
  double norm = 0.0;
  for (double v : pr.gradient) norm += v * v;
  return {false, "gradient", std::sqrt(norm)};
}

Prop1Report check_prop1(const FunctionExpr& c1, const FunctionExpr& c2, const Window& w,
                        const std::vector<CriticalComponent>& components, const Prop1Options& opt) {
  Prop1Report rep;
  std::mutex mu;
  auto note = [&](const std::string& s) {
    std::lock_guard lock(mu);
    if (rep.disagreements.size() < kMaxMessages) rep.disagreements.push_back(s);
  };
  auto fn = [&](Owner o) -> const FunctionExpr& { return o == Owner::C1 ? c1 : c2; };

  // Predicted critical points: rank 0 and regular.
  struct Site {
    Owner owner;
    double x;
    const CriticalComponent* comp;
  };
  std::vector<Site> sites;
  for (const auto& c : components)
    for (double x : component_samples(c, w)) sites.push_back({c.owner, x, &c});
  rep.morse_applicable = !components.empty() && std::all_of(components.begin(), components.end(), [](const auto& c) {
    return c.kind == ComponentKind::Point && std::abs(c.d2) > kMorseD2;
  });
  rep.min_morse_det = INFINITY;
  std::vector<double> dets(sites.size(), INFINITY);
  std::vector<char> reg_fail(sites.size(), 0), regular(sites.size(), 0);
  parallel_for(sites.size(), [&](std::size_t i) {
    const Site& s = sites[i];
    std::vector<double> p(static_cast<std::size_t>(opt.m) + 1, 0.0);
    p[0] = fn(s.owner).eval(s.x);
    p[1] = s.x;
    ManifoldProbe pr = make_probe(c1, c2, p, w.tol.tau_rank);
    pr.boundary = true;
    pr.owner = s.owner;
    pr.predicted_critical = true;
    if (!check_regularity(pr, w.tol).pass) {
      reg_fail[i] = 1;
      note("predicted point " + fmt_point(pr.point) + " is not a regular point of X");
    }
    if (pr.observed_rank != 0) {
      regular[i] = 1;
      note("predicted critical point " + fmt_point(pr.point) + " has rank 1 (sigma " + std::to_string(pr.sigma) + ")");
    }
    if (rep.morse_applicable) {
      Jet a = c1.jet(s.x), b = c2.jet(s.x);
      int n = opt.m + 1;
      double x1 = p[0];
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
      h(0, 0) = -2.0;
      h(0, 1) = h(1, 0) = a.d1 + b.d1;
      h(1, 1) = -a.d2 * (b.value - x1) - 2.0 * a.d1 * b.d1 + (x1 - a.value) * b.d2;
      for (int j = 2; j < n; ++j) h(j, j) = -2.0;
      Eigen::VectorXd g = Eigen::Map<const Eigen::VectorXd>(pr.gradient.data(), n);
      double lambda = g(0) / g.squaredNorm();
      Eigen::MatrixXd t = tangent_basis(g);
      Eigen::MatrixXd hr = t.transpose() * (-lambda * h) * t;
      dets[i] = hr.determinant();
    }
  });
  rep.predicted = sites.size();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    rep.regularity_failures += reg_fail[i];
    rep.predicted_regular += regular[i];
    if (rep.morse_applicable) {
      ++rep.morse_checked;
      rep.min_morse_det = std::min(rep.min_morse_det, std::abs(dets[i]));
      if (!(std::abs(dets[i]) > w.tol.tau_flat)) {
        ++rep.morse_failures;
        note("degenerate restricted Hessian at x = " + std::to_string(sites[i].x));
      }
    }
  }
  if (!rep.morse_applicable) rep.min_morse_det = 0.0;

  // Generic probes: regular, and rank 0 only on flat stretches of a sheet
  // that reach a predicted point.
  auto flat_connected = [&](const ManifoldProbe& pr) {
    double x = pr.point[1];
    const Site* left = nullptr;
    const Site* right = nullptr;
    for (const Site& s : sites) {
      if (s.owner != pr.owner) continue;
      if (s.x <= x && (!left || s.x > left->x)) left = &s;
      if (s.x >= x && (!right || s.x < right->x)) right = &s;
    }
    const FunctionExpr& f = fn(pr.owner);
    auto flat_to = [&](const Site* s) {
      if (!s) return false;
      for (int k = 0; k <= kFlatSamples; ++k) {
        double t = x + (s->x - x) * k / kFlatSamples;
        if (boundary_sigma(f, t) > 10.0 * w.tol.tau_rank) return false;
      }
      return true;
    };
    return flat_to(left) || flat_to(right);
  };
  std::vector<ManifoldProbe> probes = sample_on_X(c1, c2, opt.m, w, opt.n, opt.seed);
  rep.probes = probes.size();
  std::vector<char> bad(probes.size(), 0), r0(probes.size(), 0), unexplained(probes.size(), 0);
  parallel_for(probes.size(), [&](std::size_t i) {
    const ManifoldProbe& pr = probes[i];
    RegularityVerdict v = check_regularity(pr, w.tol);
    if (!v.pass) {
      bad[i] = 1;
      note("probe " + fmt_point(pr.point) + " fails regularity");
    }
    if (pr.observed_rank == 0) {
      r0[i] = 1;
      if (!flat_connected(pr)) {
        unexplained[i] = 1;
        note("probe " + fmt_point(pr.point) + " has rank 0 away from predicted critical points");
      }
    }
  });
  for (std::size_t i = 0; i < probes.size(); ++i) {
    rep.regularity_failures += bad[i];
    rep.rank0 += r0[i];
    rep.unexplained_rank0 += unexplained[i];
  }
  return rep;
}

}  // namespace reebstrip
