#include "reebstrip/slice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reebstrip/error.hpp"
#include "reebstrip/parallel.hpp"

namespace reebstrip {

std::string_view to_string(ContourKind k) {
  switch (k) {
    case ContourKind::Point: return "Point";
    case ContourKind::Compact: return "Compact";
    case ContourKind::HalfUnboundedBelow: return "HalfUnboundedBelow";
    case ContourKind::HalfUnboundedAbove: return "HalfUnboundedAbove";
    case ContourKind::FullLine: return "FullLine";
  }
  return "?";
}

namespace {

enum class TailTest { Holds, Fails, Oscillates, Unknown };

// Does c_k satisfy its side of c1 <= p <= c2 far out on `side`?
TailTest tail_test(const Tail& t, int k, double p, double edge_value) {
  bool lower = k == 0;  // c1 <= p
  switch (t.kind) {
    case TailKind::Unknown: return TailTest::Unknown;
    case TailKind::DivergesMinus: return lower ? TailTest::Holds : TailTest::Fails;
    case TailKind::DivergesPlus: return lower ? TailTest::Fails : TailTest::Holds;
    case TailKind::FiniteLimit: {
      if (t.lo == p) return (lower ? edge_value <= p : edge_value >= p) ? TailTest::Holds : TailTest::Fails;
      return (lower ? t.lo < p : t.lo > p) ? TailTest::Holds : TailTest::Fails;
    }
    case TailKind::BoundedOscillation: {
      if (lower) return p > t.hi ? TailTest::Holds : (p < t.lo ? TailTest::Fails : TailTest::Oscillates);
      return p < t.lo ? TailTest::Holds : (p > t.hi ? TailTest::Fails : TailTest::Oscillates);
    }
  }
  return TailTest::Unknown;
}

}  // namespace

SliceContext::SliceContext(FunctionExpr c1, FunctionExpr c2, Window w, TailMetadata tails,
                           std::vector<CriticalComponent> components)
    : c1_(std::move(c1)), c2_(std::move(c2)), w_(w), tails_(tails), comps_(std::move(components)) {
  w_.validate();
  std::size_t n = std::max<std::size_t>(w_.tol.min_cells,
                                        static_cast<std::size_t>(std::ceil(w_.tol.cells_per_unit * w_.width())));
  double h = w_.width() / static_cast<double>(n);
  xs_.reserve(n + 1 + comps_.size() * 2);
  for (std::size_t i = 0; i <= n; ++i) xs_.push_back(i == n ? w_.x_hi : w_.x_lo + static_cast<double>(i) * h);
  for (const auto& c : comps_) {
    if (c.kind == ComponentKind::FullLine) continue;
    for (double x : {c.x_lo, c.x_hi})
      if (x > w_.x_lo && x < w_.x_hi) xs_.push_back(x);
  }
  std::sort(xs_.begin(), xs_.end());
  xs_.erase(std::unique(xs_.begin(), xs_.end(), [](double a, double b) { return b - a <= 1e-13 * std::max(1.0, std::abs(a)); }),
            xs_.end());
  xs_.back() = w_.x_hi;
  for (int k = 0; k < 2; ++k) v_[k].resize(xs_.size());
  parallel_for(xs_.size(), [&](std::size_t i) {
    v_[0][i] = c1_.eval(xs_[i]);
    v_[1][i] = c2_.eval(xs_[i]);
  });
  for (int k = 0; k < 2; ++k) build_tree(k);
}

void SliceContext::build_tree(int k) {
  std::size_t pieces = xs_.size() - 1;
  leaves_ = 1;
  while (leaves_ < pieces) leaves_ *= 2;
  const double inf = std::numeric_limits<double>::infinity();
  tmin_[k].assign(2 * leaves_, inf);
  tmax_[k].assign(2 * leaves_, -inf);
  for (std::size_t i = 0; i < pieces; ++i) {
    tmin_[k][leaves_ + i] = std::min(v_[k][i], v_[k][i + 1]);
    tmax_[k][leaves_ + i] = std::max(v_[k][i], v_[k][i + 1]);
  }
  for (std::size_t i = leaves_ - 1; i >= 1; --i) {
    tmin_[k][i] = std::min(tmin_[k][2 * i], tmin_[k][2 * i + 1]);
    tmax_[k][i] = std::max(tmax_[k][2 * i], tmax_[k][2 * i + 1]);
  }
}

void SliceContext::collect(int k, double p, std::size_t node, std::size_t lo, std::size_t hi,
                           std::vector<std::size_t>& out) const {
  if (tmin_[k][node] > p || tmax_[k][node] < p) return;
  if (hi - lo == 1) {
    out.push_back(lo);
    return;
  }
  std::size_t mid = (lo + hi) / 2;
  collect(k, p, 2 * node, lo, mid, out);
  collect(k, p, 2 * node + 1, mid, hi, out);
}

// Intervals where c1 <= p (k = 0) or c2 >= p (k = 1).
std::vector<std::pair<double, double>> SliceContext::sublevel(int k, double p) const {
  const FunctionExpr& f = k == 0 ? c1_ : c2_;
  auto inside = [&](double v) { return k == 0 ? v <= p : v >= p; };
  auto bisect = [&](double a, double b, bool in_a) {
    while (b - a > w_.tol.tau_x) {
      double m = 0.5 * (a + b);
      if (inside(f.eval(m)) == in_a) a = m;
      else b = m;
    }
    return 0.5 * (a + b);
  };
  std::vector<std::size_t> pieces;
  collect(k, p, 1, 0, leaves_, pieces);
  std::vector<std::pair<double, double>> out;
  bool state = inside(v_[k][0]);
  double start = xs_.front();
  for (std::size_t i : pieces) {
    bool ina = inside(v_[k][i]), inb = inside(v_[k][i + 1]);
    if (ina == inb) continue;
    double r = bisect(xs_[i], xs_[i + 1], ina);
    if (ina) {
      out.emplace_back(start, r);
    } else {
      start = r;
    }
    state = inb;
  }
  if (state) out.emplace_back(start, xs_.back());
  return out;
}

void SliceContext::assign_kind(Contour& c, double p) const {
  auto side_bound = [&](Side s, bool& unbounded) {
    std::size_t edge = s == Side::Minus ? 0 : xs_.size() - 1;
    TailTest a = tail_test(tails_.get(Owner::C1, s), 0, p, v_[0][edge]);
    TailTest b = tail_test(tails_.get(Owner::C2, s), 1, p, v_[1][edge]);
    unbounded = a == TailTest::Holds && b == TailTest::Holds;
    bool settled = unbounded || a == TailTest::Fails || b == TailTest::Fails || a == TailTest::Oscillates ||
                   b == TailTest::Oscillates;
    if (!settled) c.truncated = true;
  };
  if (c.lo_at_edge) side_bound(Side::Minus, c.lo_unbounded);
  if (c.hi_at_edge) side_bound(Side::Plus, c.hi_unbounded);
  if (c.lo_unbounded && c.hi_unbounded) c.kind = ContourKind::FullLine;
  else if (c.lo_unbounded) c.kind = ContourKind::HalfUnboundedBelow;
  else if (c.hi_unbounded) c.kind = ContourKind::HalfUnboundedAbove;
  else if (!c.lo_at_edge && !c.hi_at_edge && c.hi - c.lo <= w_.tol.tau_x) c.kind = ContourKind::Point;
  else c.kind = ContourKind::Compact;
}

LevelSlice SliceContext::slice(double p) const {
  LevelSlice s;
  s.p = p;
  auto A = sublevel(0, p);
  auto B = sublevel(1, p);
  std::size_t i = 0, j = 0;
  double tv = w_.tol.tau_val * std::max(1.0, std::abs(p));
  while (i < A.size() && j < B.size()) {
    double l = std::max(A[i].first, B[j].first);
    double r = std::min(A[i].second, B[j].second);
    if (l <= r) {
      Contour c;
      c.lo = l;
      c.hi = r;
      c.lo_at_edge = l <= xs_.front();
      c.hi_at_edge = r >= xs_.back();
      assign_kind(c, p);
      if (c.kind == ContourKind::Point) c.lo = c.hi = 0.5 * (l + r);
      auto touch = [&](double x) {
        int t = TouchNone;
        if (std::abs(c1_.eval(x) - p) <= tv) t |= TouchC1;
        if (std::abs(c2_.eval(x) - p) <= tv) t |= TouchC2;
        return t;
      };
      if (!c.lo_at_edge) c.touch_lo = touch(c.lo);
      if (!c.hi_at_edge) c.touch_hi = touch(c.hi);
      s.contours.push_back(std::move(c));
    }
    if (A[i].second < B[j].second) ++i;
    else ++j;
  }
  return contour_criticality(std::move(s), comps_, w_);
}

bool critical_value_matches(const CriticalComponent& c, double p) {
  double slack = c.value_tol + 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(p), std::abs(c.value));
  return std::abs(c.value - p) <= slack;
}

LevelSlice contour_criticality(LevelSlice s, const std::vector<CriticalComponent>& components, const Window& w) {
  for (auto& c : s.contours) {
    c.is_critical = false;
    c.critical_points.clear();
    for (const auto& k : components) {
      if (!critical_value_matches(k, s.p)) continue;
      bool overlaps;
      if (k.kind == ComponentKind::FullLine) overlaps = true;
      else overlaps = c.contains(std::clamp(c.mid(), k.x_lo, k.x_hi), w.tol.tau_x);
      if (!overlaps) continue;
      c.is_critical = true;
      double x = k.kind == ComponentKind::Point ? k.x() : std::clamp(c.mid(), k.x_lo, k.x_hi);
      c.critical_points.emplace_back(k.owner, x);
    }
  }
  return s;
}

LevelSlice level_slice(const FunctionExpr& c1, const FunctionExpr& c2, double p, const Window& w,
                       const TailMetadata& tails) {
  auto a = isolate_critical(c1, Owner::C1, w, &tails);
  auto b = isolate_critical(c2, Owner::C2, w, &tails);
  std::vector<CriticalComponent> all = std::move(a.components);
  all.insert(all.end(), b.components.begin(), b.components.end());
  return SliceContext(c1, c2, w, tails, std::move(all)).slice(p);
}

}  // namespace reebstrip
