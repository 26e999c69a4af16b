#include <algorithm>
#include <cmath>

#include "reebstrip/parallel.hpp"
#include "reebstrip/reeb.hpp"

namespace reebstrip {

namespace {

constexpr int kMildSamples = 4000;

enum class Sign { Pos, Neg, Both, None };

// Sign pattern of f' on [a, b], ignoring values within tau_flat of the
// largest |f'| seen there.
Sign derivative_sign(const FunctionExpr& f, double a, double b, double tau_flat) {
  std::vector<double> d(kMildSamples + 1);
  parallel_for(d.size(), [&](std::size_t i) {
    double x = a + (b - a) * static_cast<double>(i) / kMildSamples;
    d[i] = f.deriv(x);
  });
  double scale = 0.0;
  for (double v : d)
    if (std::isfinite(v)) scale = std::max(scale, std::abs(v));
  bool pos = false, neg = false;
  for (double v : d) {
    if (!std::isfinite(v)) continue;
    if (v > tau_flat * scale) pos = true;
    if (v < -tau_flat * scale) neg = true;
  }
  if (pos && neg) return Sign::Both;
  if (pos) return Sign::Pos;
  if (neg) return Sign::Neg;
  return Sign::None;
}

struct MildResult {
  TriState mild;
  std::optional<std::pair<double, double>> tail;
};

MildResult mildness(const FunctionExpr& f, const CharacteristicSequence& seq, const Window& w) {
  const auto& wit = seq.witnesses;
  std::size_t need = static_cast<std::size_t>((w.tol.n_acc + 1) / 2);
  if (wit.size() < need) return {TriState::WindowLimited, std::nullopt};
  double edge = seq.direction == Side::Minus ? w.x_lo : w.x_hi;
  auto interval = [&](std::size_t m) {
    double x = wit[wit.size() - m];
    return std::make_pair(std::min(x, edge), std::max(x, edge));
  };
  auto [a, b] = interval(need);
  Sign s = derivative_sign(f, a, b, w.tol.tau_flat);
  if (s != Sign::Both) return {TriState::Yes, std::make_pair(a, b)};
  // Nested scales: fewer witnesses, closer to the edge.
  for (std::size_t m = need - 1; m >= 1; --m) {
    auto [lo, hi] = interval(m);
    if (derivative_sign(f, lo, hi, w.tol.tau_flat) != Sign::Both) return {TriState::WindowLimited, std::nullopt};
  }
  return {TriState::No, std::nullopt};
}

bool overlaps(const Contour& a, const Contour& b, double slack) {
  double alo = a.lo_unbounded ? -INFINITY : a.lo, ahi = a.hi_unbounded ? INFINITY : a.hi;
  double blo = b.lo_unbounded ? -INFINITY : b.lo, bhi = b.hi_unbounded ? INFINITY : b.hi;
  return alo <= bhi + slack && blo <= ahi + slack;
}

}  // namespace

std::vector<NonNormalRecord> analyze_non_normal(const AccumulationReport& acc, const SliceContext& ctx) {
  const Window& w = ctx.window();
  std::vector<NonNormalRecord> out;
  for (const auto& lvl : acc.levels) {
    if (lvl.p < w.value_lo || lvl.p > w.value_hi) continue;
    LevelSlice s = ctx.slice(lvl.p);
    for (const Contour& c : s.contours) {
      bool reaches = lvl.side == Side::Minus ? (c.lo_unbounded || (c.lo_at_edge && c.truncated))
                                             : (c.hi_unbounded || (c.hi_at_edge && c.truncated));
      if (!reaches) continue;
      CharacteristicSequence seq{lvl.owner, lvl.side, lvl.witnesses};
      MildResult m = mildness(ctx.c(lvl.owner), seq, w);
      NonNormalRecord* rec = nullptr;
      for (auto& r : out)
        if (std::abs(r.p - lvl.p) <= w.tol.tau_val * std::max(1.0, std::abs(lvl.p)) &&
            overlaps(r.contour, c, w.tol.tau_x))
          rec = &r;
      if (!rec) {
        out.push_back({});
        rec = &out.back();
        rec->p = lvl.p;
        rec->contour = c;
        rec->is_critical = c.is_critical;
        rec->mild = m.mild;
        rec->monotone_tail = m.tail;
      } else {
        rec->is_critical = rec->is_critical || c.is_critical;
        if (m.mild == TriState::No || rec->mild == TriState::No) rec->mild = TriState::No;
        else if (m.mild == TriState::WindowLimited) rec->mild = TriState::WindowLimited;
      }
      rec->sequences.push_back(std::move(seq));
    }
  }
  std::sort(out.begin(), out.end(), [](const NonNormalRecord& a, const NonNormalRecord& b) { return a.p < b.p; });
  return out;
}

}  // namespace reebstrip
