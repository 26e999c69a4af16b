#include <algorithm>
#include <cmath>
#include <optional>

#include "reebstrip/critical.hpp"

namespace reebstrip {

namespace {

constexpr double kContract = 0.9;
constexpr std::size_t kMinExcursions = 3;

struct Pt {
  double x, v, tol;
};

bool distinct(const Pt& a, const Pt& b) { return std::abs(a.v - b.v) > a.tol + b.tol; }

// Longest trailing run (ending at the last element) that is strictly
// monotone with increments contracting by kContract.
std::size_t trailing_run(const std::vector<Pt>& s) {
  std::size_t n = s.size();
  if (n < 2 || !distinct(s[n - 2], s[n - 1])) return n ? 1 : 0;
  double dir = s[n - 1].v - s[n - 2].v;
  std::size_t len = 2;
  for (std::size_t k = n - 2; k > 0; --k) {
    const Pt& a = s[k - 1];
    const Pt& b = s[k];
    const Pt& c = s[k + 1];
    double d_in = b.v - a.v, d_out = c.v - b.v;
    if (!distinct(a, b) || (d_in > 0) != (dir > 0)) break;
    if (std::abs(d_out) > kContract * std::abs(d_in)) break;
    ++len;
  }
  return len;
}

struct Estimate {
  double p, last_step;
};

Estimate extrapolate(const std::vector<Pt>& s) {
  std::size_t n = s.size();
  double d1 = s[n - 1].v - s[n - 2].v;
  double d0 = s[n - 2].v - s[n - 3].v;
  double r = std::abs(d1 / d0);
  return {s[n - 1].v + d1 * r / (1.0 - r), std::abs(d1)};
}

// Longest subsequence with strictly shrinking |v - p|, in input order.
std::vector<double> witnesses(const std::vector<Pt>& s, double p) {
  // Longest strictly decreasing subsequence of d_i = |v_i - p| (patience sort on -d).
  std::vector<double> tails;
  std::vector<std::size_t> tail_idx, prev(s.size(), SIZE_MAX);
  for (std::size_t i = 0; i < s.size(); ++i) {
    double key = -std::abs(s[i].v - p);
    auto it = std::lower_bound(tails.begin(), tails.end(), key);
    std::size_t pos = static_cast<std::size_t>(it - tails.begin());
    if (pos > 0) prev[i] = tail_idx[pos - 1];
    if (it == tails.end()) {
      tails.push_back(key);
      tail_idx.push_back(i);
    } else {
      *it = key;
      tail_idx[pos] = i;
    }
  }
  std::vector<double> out;
  if (tail_idx.empty()) return out;
  for (std::size_t i = tail_idx.back(); i != SIZE_MAX; i = prev[i]) out.push_back(s[i].x);
  std::reverse(out.begin(), out.end());
  return out;
}

// Extremes of Schmitt-trigger excursions, in order; the final excursion is
// dropped because the window cut it.
std::pair<std::vector<Pt>, std::vector<Pt>> excursions(const std::vector<Pt>& s) {
  std::vector<Pt> highs, lows;
  if (s.size() < 3) return {highs, lows};
  double lo = s[0].v, hi = s[0].v;
  for (const Pt& p : s) {
    lo = std::min(lo, p.v);
    hi = std::max(hi, p.v);
  }
  double mid = 0.5 * (lo + hi), q = 0.25 * (hi - lo);
  if (!(q > 0)) return {highs, lows};
  int state = 0;
  std::optional<Pt> cur;
  for (const Pt& p : s) {
    int st = p.v > mid + q ? 1 : (p.v < mid - q ? -1 : 0);
    if (st != 0 && st != state) {
      if (cur) (state > 0 ? highs : lows).push_back(*cur);
      state = st;
      cur = p;
    } else if (st == state && cur) {
      if ((state > 0 && p.v > cur->v) || (state < 0 && p.v < cur->v)) cur = p;
    }
  }
  return {highs, lows};
}

struct Found {
  double p_hat, step;
  int envelope;  // +1 upper, -1 lower, 0 monotone run
  double last, dir, last_tol;
};

}  // namespace

std::vector<double> AccumulationReport::distinct_levels(double tau_val) const {
  std::vector<double> v;
  for (const auto& l : levels) v.push_back(l.p);
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || x - out.back() > tau_val * std::max(1.0, std::abs(x))) out.push_back(x);
  return out;
}

AccumulationReport detect_accumulation(const std::vector<CriticalComponent>& comps, const TailMetadata& tails,
                                       const Window& w) {
  const Tolerances& tol = w.tol;
  AccumulationReport rep;
  for (Owner owner : {Owner::C1, Owner::C2}) {
    std::vector<Pt> pts;
    for (const auto& c : comps)
      if (c.owner == owner && c.kind == ComponentKind::Point) pts.push_back({c.x(), c.value, c.value_tol});
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.x < b.x; });
    for (Side side : {Side::Minus, Side::Plus}) {
      std::vector<Pt> s = pts;  // ordered toward the edge
      if (side == Side::Minus) std::reverse(s.begin(), s.end());
      std::vector<Found> found;
      std::size_t run = trailing_run(s);
      if (run >= static_cast<std::size_t>(tol.n_acc) && run >= 3) {
        std::vector<Pt> tail(s.end() - static_cast<std::ptrdiff_t>(run), s.end());
        Estimate e = extrapolate(tail);
        found.push_back({e.p, e.last_step, 0, tail.back().v, tail.back().v - tail[tail.size() - 2].v, tail.back().tol});
      }
      auto [highs, lows] = excursions(s);
      for (auto* env : {&highs, &lows}) {
        std::size_t r = trailing_run(*env);
        if (r < kMinExcursions) continue;
        std::vector<Pt> tail(env->end() - static_cast<std::ptrdiff_t>(r), env->end());
        Estimate e = extrapolate(tail);
        found.push_back({e.p, e.last_step, env == &highs ? 1 : -1, tail.back().v,
                         tail.back().v - tail[tail.size() - 2].v, tail.back().tol});
      }
      const Tail& t = tails.get(owner, side);
      std::vector<double> declared;
      if (t.kind == TailKind::FiniteLimit) declared = {t.lo};
      if (t.kind == TailKind::BoundedOscillation) declared = {t.lo, t.hi};
      for (const Found& f : found) {
        AccumulationLevel lvl;
        lvl.owner = owner;
        lvl.side = side;
        lvl.envelope = f.envelope != 0;
        lvl.p = f.p_hat;
        double funnel = f.step + tol.tau_val * std::max(1.0, std::abs(f.p_hat));
        for (double d : declared)
          if (std::abs(d - f.p_hat) <= funnel) {
            lvl.p = d;
            lvl.confidence = Confidence::DeclaredTail;
            break;
          }
        // A converging envelope of an oscillating tail tends to the declared
        // bound on its side, however slowly, as long as it heads there.
        if (lvl.confidence != Confidence::DeclaredTail && f.envelope != 0 && t.kind == TailKind::BoundedOscillation) {
          double d = f.envelope > 0 ? t.hi : t.lo;
          if ((d - f.last) * f.dir >= -f.last_tol && (d - f.last) * f.envelope >= -f.last_tol) {
            lvl.p = d;
            lvl.confidence = Confidence::DeclaredTail;
          }
        }
        lvl.witnesses = witnesses(s, lvl.p);
        lvl.count = lvl.witnesses.size();
        if (lvl.count < static_cast<std::size_t>(tol.n_acc)) continue;
        bool dup = false;
        for (const auto& o : rep.levels)
          if (o.owner == owner && o.side == side && std::abs(o.p - lvl.p) <= tol.tau_val * std::max(1.0, std::abs(lvl.p)))
            dup = true;
        if (!dup) rep.levels.push_back(std::move(lvl));
      }
    }
  }
  rep.confidence = tails.all_declared() ? Confidence::DeclaredTail : Confidence::WindowLimited;
  for (const auto& l : rep.levels)
    if (l.confidence == Confidence::WindowLimited) rep.confidence = Confidence::WindowLimited;
  return rep;
}

}  // namespace reebstrip
