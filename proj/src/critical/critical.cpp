#include "reebstrip/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reebstrip/error.hpp"
#include "reebstrip/parallel.hpp"

namespace reebstrip {

std::string_view to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::Point: return "Point";
    case ComponentKind::CompactInterval: return "CompactInterval";
    case ComponentKind::HalfLineLeft: return "HalfLineLeft";
    case ComponentKind::HalfLineRight: return "HalfLineRight";
    case ComponentKind::FullLine: return "FullLine";
  }
  return "?";
}

namespace {

constexpr double kUnderflow = 1e-290;
constexpr int kScaleRadius = 32;

int sgn(double v) { return (v > 0) - (v < 0); }

struct Sample {
  double x;
  Jet j;
  bool ok;  // finite derivative
};

Sample sample_at(const FunctionExpr& f, double x) {
  Sample s{x, {}, false};
  try {
    s.j = f.jet(x);
    s.ok = std::isfinite(s.j.d1);
  } catch (const DomainError&) {
    s.ok = false;
  }
  return s;
}

class Isolator {
 public:
  Isolator(const FunctionExpr& f, Owner owner, const Window& w, const TailMetadata* tails)
      : f_(f), owner_(owner), w_(w), tol_(w.tol), tails_(tails) {}

  CriticalSet run() {
    if (f_.is_constant()) {
      CriticalComponent c;
      c.owner = owner_;
      c.kind = ComponentKind::FullLine;
      c.x_lo = w_.x_lo;
      c.x_hi = w_.x_hi;
      c.value = f_.eval(w_.x_lo);
      out_.components.push_back(c);
      return std::move(out_);
    }
    build_grid();
    mark_unresolved();
    compute_scale();
    find_plateaus();
    scan_cells();
    finish();
    return std::move(out_);
  }

 private:
  const FunctionExpr& f_;
  Owner owner_;
  const Window& w_;
  const Tolerances& tol_;
  const TailMetadata* tails_;
  CriticalSet out_;

  std::size_t n_ = 0;  // cells
  double h_ = 0.0;
  std::vector<Sample> g_;
  std::vector<char> bad_;      // excluded sample (unresolved run)
  std::vector<char> plateau_;  // sample inside a plateau
  std::vector<double> scale_;
  std::vector<double> roots_, touches_;
  std::vector<std::pair<double, double>> coarse_;

  void build_grid() {
    n_ = std::max<std::size_t>(tol_.min_cells, static_cast<std::size_t>(std::ceil(tol_.cells_per_unit * w_.width())));
    h_ = w_.width() / static_cast<double>(n_);
    g_.resize(n_ + 1);
    parallel_for(n_ + 1, [&](std::size_t i) {
      double x = i == n_ ? w_.x_hi : w_.x_lo + static_cast<double>(i) * h_;
      g_[i] = sample_at(f_, x);
    });
  }

  bool tiny(std::size_t i) const { return !g_[i].ok || std::abs(g_[i].j.d1) < kUnderflow; }

  void mark_unresolved() {
    bad_.assign(g_.size(), 0);
    std::size_t i = 0;
    while (i < g_.size()) {
      if (!tiny(i)) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < g_.size() && tiny(j)) ++j;
      // An isolated exact zero is a genuine root; longer runs are underflow.
      bool lone_zero = (j - i) < 3;
      for (std::size_t k = i; k < j; ++k)
        if (!lone_zero || !g_[k].ok) bad_[k] = 1;
      if (!lone_zero)
        out_.diagnostics.push_back({"unresolved",
                                    "derivative of " + std::string(to_string(owner_)) +
                                        " underflows or is not finite; critical points here are not resolved",
                                    g_[i].x, g_[j - 1].x});
      i = j;
    }
  }

  void compute_scale() {
    scale_.assign(g_.size(), 0.0);
    for (std::size_t i = 0; i < g_.size(); ++i) {
      std::size_t a = i >= kScaleRadius ? i - kScaleRadius : 0;
      std::size_t b = std::min(g_.size() - 1, i + kScaleRadius);
      double m = 0.0;
      for (std::size_t k = a; k <= b; ++k)
        if (!bad_[k]) m = std::max(m, std::abs(g_[k].j.d1));
      scale_[i] = m;
    }
  }

  double scale_near(double x) const {
    double t = (x - w_.x_lo) / h_;
    auto i = static_cast<std::size_t>(std::clamp(std::llround(t), 0LL, static_cast<long long>(n_)));
    return scale_[i];
  }

  bool flat_at(double x, double d1) const { return std::abs(d1) <= tol_.tau_flat * scale_near(x); }

  void find_plateaus() {
    plateau_.assign(g_.size(), 0);
    std::size_t i = 0;
    while (i < g_.size()) {
      auto flat = [&](std::size_t k) { return !bad_[k] && g_[k].ok && std::abs(g_[k].j.d1) <= tol_.tau_flat * scale_[k]; };
      if (!flat(i)) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < g_.size() && flat(j)) ++j;
      if (j - i >= 3) {
        for (std::size_t k = i; k < j; ++k) plateau_[k] = 1;
        add_plateau(i, j - 1);
      }
      i = j;
    }
  }

  void add_plateau(std::size_t a, std::size_t b) {
    CriticalComponent c;
    c.owner = owner_;
    c.kind = ComponentKind::CompactInterval;
    c.x_lo = g_[a].x;
    c.x_hi = g_[b].x;
    c.value = g_[(a + b) / 2].j.value;
    c.certified = false;
    c.value_tol = tol_.tau_val * std::max(1.0, std::abs(c.value));
    bool left = a == 0, right = b == n_;
    auto matches = [&](Side s) {
      if (!tails_) return false;
      const Tail& t = tails_->get(owner_, s);
      return t.kind == TailKind::FiniteLimit && std::abs(t.lo - c.value) <= c.value_tol;
    };
    if (left && !right && matches(Side::Minus)) c.kind = ComponentKind::HalfLineLeft;
    else if (right && !left && matches(Side::Plus)) c.kind = ComponentKind::HalfLineRight;
    else if (left || right)
      out_.diagnostics.push_back({"plateau-at-edge",
                                  "plateau of " + std::string(to_string(owner_)) +
                                      " reaches the window edge without a matching declared limit",
                                  c.x_lo, c.x_hi});
    out_.components.push_back(c);
  }

  double bisect_d1(double a, double da, double b) const {
    while (b - a > tol_.tau_x) {
      double m = 0.5 * (a + b);
      double dm = sample_at(f_, m).j.d1;
      if (dm == 0.0) return m;
      if (sgn(dm) == sgn(da)) {
        a = m;
        da = dm;
      } else {
        b = m;
      }
    }
    return 0.5 * (a + b);
  }

  // Root of f'' in [a, b] given a sign change.
  double bisect_d2(double a, double ta, double b) const {
    while (b - a > tol_.tau_x) {
      double m = 0.5 * (a + b);
      double tm = sample_at(f_, m).j.d2;
      if (!std::isfinite(tm) || tm == 0.0) return m;
      if (sgn(tm) == sgn(ta)) {
        a = m;
        ta = tm;
      } else {
        b = m;
      }
    }
    return 0.5 * (a + b);
  }

  struct CellOut {
    std::vector<double> roots, touches;
    std::vector<std::pair<double, double>> coarse;
  };

  void cell(const Sample& A, int ta, const Sample& B, int tb, int depth, CellOut& out) const {
    int sa = sgn(A.j.d1), sb = sgn(B.j.d1);
    bool curv_ok = std::isfinite(A.j.d2) && std::isfinite(B.j.d2);
    if (!curv_ok) {
      if (sa * sb < 0) out.roots.push_back(bisect_d1(A.x, A.j.d1, B.x));
      return;
    }
    if (ta == 0) ta = tb;
    if (tb == 0) tb = ta;
    if (ta == tb) {
      double delta = B.j.d1 - A.j.d1;
      if (ta != 0 && sgn(delta) == -ta) {
        // f' moved against its slope sign: f'' changed sign at least twice.
        if (depth >= tol_.max_refine) {
          out.coarse.emplace_back(A.x, B.x);
          if (sa * sb < 0) out.roots.push_back(bisect_d1(A.x, A.j.d1, B.x));
          return;
        }
        split(A, ta, B, tb, depth, out);
        return;
      }
      if (sa * sb < 0) out.roots.push_back(bisect_d1(A.x, A.j.d1, B.x));
      return;
    }
    // One sign change of f'' assumed; the halves are checked again.
    double xe = bisect_d2(A.x, A.j.d2, B.x);
    Sample E = sample_at(f_, xe);
    if (!E.ok) return;
    int se = sgn(E.j.d1);
    if (sa == sb && sa != 0 && flat_at(xe, E.j.d1)) {
      out.touches.push_back(xe);
      return;
    }
    if (se == 0) {
      out.roots.push_back(xe);
      return;
    }
    if (xe - A.x > tol_.tau_x) cell(A, ta, E, ta, depth, out);
    if (B.x - xe > tol_.tau_x) cell(E, tb, B, tb, depth, out);
  }

  void split(const Sample& A, int ta, const Sample& B, int tb, int depth, CellOut& out) const {
    Sample M = sample_at(f_, 0.5 * (A.x + B.x));
    if (!M.ok || !std::isfinite(M.j.d2)) {
      if (sgn(A.j.d1) * sgn(B.j.d1) < 0) out.roots.push_back(bisect_d1(A.x, A.j.d1, B.x));
      return;
    }
    int tm = sgn(M.j.d2);
    cell(A, ta, M, tm, depth + 1, out);
    cell(M, tm, B, tb, depth + 1, out);
  }

  void scan_cells() {
    for (std::size_t i = 0; i < g_.size(); ++i) {
      if (bad_[i] || plateau_[i] || !g_[i].ok || g_[i].j.d1 != 0.0) continue;
      int l = i > 0 ? sgn(g_[i - 1].j.d1) : 0;
      int r = i < n_ ? sgn(g_[i + 1].j.d1) : 0;
      if (l != 0 && l == r) touches_.push_back(g_[i].x);
      else roots_.push_back(g_[i].x);
    }
    std::vector<CellOut> outs(n_);
    parallel_for(n_, [&](std::size_t i) {
      if (bad_[i] || bad_[i + 1] || plateau_[i] || plateau_[i + 1]) return;
      const Sample& A = g_[i];
      const Sample& B = g_[i + 1];
      cell(A, sgn(A.j.d2), B, sgn(B.j.d2), 0, outs[i]);
    });
    for (auto& o : outs) {
      roots_.insert(roots_.end(), o.roots.begin(), o.roots.end());
      touches_.insert(touches_.end(), o.touches.begin(), o.touches.end());
      coarse_.insert(coarse_.end(), o.coarse.begin(), o.coarse.end());
    }
  }

  void finish() {
    struct Cand {
      double x;
      bool touch;
    };
    std::vector<Cand> cands;
    for (double x : roots_) cands.push_back({x, false});
    for (double x : touches_) cands.push_back({x, true});
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.x < b.x; });
    std::vector<Cand> uniq;
    for (const Cand& c : cands) {
      if (!uniq.empty() && c.x - uniq.back().x <= 2.0 * tol_.tau_x) {
        if (!c.touch) uniq.back() = c;  // a bracketed root wins
        continue;
      }
      uniq.push_back(c);
    }
    std::vector<CriticalComponent> plateaus = std::move(out_.components);
    out_.components.clear();
    double eps_rel = f_.has_cumint() ? tol_.tau_q : 4.0 * std::numeric_limits<double>::epsilon();
    std::vector<CriticalComponent> points(uniq.size());
    std::vector<char> keep(uniq.size(), 1);
    parallel_for(uniq.size(), [&](std::size_t i) {
      for (const auto& p : plateaus)
        if (uniq[i].x >= p.x_lo - h_ && uniq[i].x <= p.x_hi + h_) keep[i] = 0;
      if (!keep[i]) return;
      Sample s = sample_at(f_, uniq[i].x);
      CriticalComponent& c = points[i];
      c.owner = owner_;
      c.kind = ComponentKind::Point;
      c.x_lo = c.x_hi = uniq[i].x;
      c.value = s.j.value;
      c.d2 = s.j.d2;
      c.touch = uniq[i].touch;
      double vt = std::abs(s.j.d1) * tol_.tau_x + eps_rel * std::abs(c.value);
      if (std::isfinite(s.j.d2)) vt += 0.5 * std::abs(s.j.d2) * tol_.tau_x * tol_.tau_x;
      double cap = tol_.tau_val * std::max(1.0, std::abs(c.value));
      c.value_tol = std::isfinite(vt) ? std::min(vt, cap) : cap;
      if (!std::isfinite(c.value)) keep[i] = 0;
    });
    for (std::size_t i = 0; i < points.size(); ++i)
      if (keep[i]) out_.components.push_back(points[i]);
    out_.components.insert(out_.components.end(), plateaus.begin(), plateaus.end());
    std::sort(out_.components.begin(), out_.components.end(),
              [](const CriticalComponent& a, const CriticalComponent& b) { return a.x_lo < b.x_lo; });

    std::sort(coarse_.begin(), coarse_.end());
    for (std::size_t i = 0; i < coarse_.size();) {
      double lo = coarse_[i].first, hi = coarse_[i].second;
      std::size_t count = 0;
      while (i < coarse_.size() && coarse_[i].first <= hi + h_) {
        hi = std::max(hi, coarse_[i].second);
        ++i;
        ++count;
      }
      out_.diagnostics.push_back({"grid-too-coarse",
                                  std::to_string(count) + " cell(s) of " + std::string(to_string(owner_)) +
                                      " still ambiguous after maximum refinement",
                                  lo, hi});
    }
  }
};

}  // namespace

CriticalSet isolate_critical(const FunctionExpr& f, Owner owner, const Window& w, const TailMetadata* tails) {
  w.validate();
  return Isolator(f, owner, w, tails).run();
}

std::vector<double> critical_values(const std::vector<CriticalComponent>& comps, double tau_val) {
  std::vector<double> v;
  v.reserve(comps.size());
  for (const auto& c : comps) v.push_back(c.value);
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x - out.back() > tau_val * std::max(1.0, std::abs(x))) out.push_back(x);
  return out;
}

}  // namespace reebstrip
