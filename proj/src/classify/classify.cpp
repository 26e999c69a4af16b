#include "reebstrip/classify.hpp"

#include <algorithm>
#include <cmath>

#include "reebstrip/error.hpp"
#include "reebstrip/parallel.hpp"

namespace reebstrip {

namespace {

bool implies(TriState a, TriState b) { return a != TriState::Yes || b == TriState::Yes; }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string QuadrupleClassification::lattice_violation() const {
  if (!implies(pts, nts)) return "pts => nts";
  if (!implies(pdc, ndc)) return "pdc => ndc";
  if (!implies(ndc, nts) || !implies(ndc, dc)) return "ndc => nts and dc";
  if (!implies(dc, ts)) return "dc => ts";
  if (pts == TriState::Yes && !z_f.empty()) return "pts => z_f empty";
  if (minimal == TriState::Yes) {
    if (z_f.size() > 4) return "minimal => |z_f| <= 4";
    for (double z : z_f) {
      bool found = false;
      for (int i = 0; i < 2; ++i)
        for (auto& s : {z_m[i], z_M[i]})
          if (s && std::abs(*s - z) <= 1e-12 * std::max(1.0, std::abs(z))) found = true;
      if (!found) return "minimal => z_f within the tail singletons";
    }
  }
  return {};
}

QuadrupleClassification classify_quadruple(const std::vector<CriticalComponent>& c1_components,
                                           const std::vector<CriticalComponent>& c2_components,
                                           const AccumulationReport& accumulation, const TailMetadata& tails,
                                           const Window& w) {
  QuadrupleClassification q;
  auto check = [&](const std::vector<CriticalComponent>& comps, Owner expect) {
    for (const auto& c : comps) {
      if (c.owner != expect) throw PreconditionError("classify: component owner does not match its list");
      if (c.x_lo < w.x_lo - 1e-9 * std::max(1.0, std::abs(w.x_lo)) ||
          c.x_hi > w.x_hi + 1e-9 * std::max(1.0, std::abs(w.x_hi)))
        throw PreconditionError("classify: component at x = " + fmt(c.x()) + " lies outside the window");
    }
  };
  check(c1_components, Owner::C1);
  check(c2_components, Owner::C2);

  if (tails.all_declared()) {
    q.ts = TriState::Yes;
    q.evidence.push_back({"ts", "all four tails declared; every component kind is admissible"});
  } else {
    q.ts = TriState::WindowLimited;
    q.evidence.push_back({"ts", "some tail is Unknown; components outside the window are not controlled"});
  }

  TriState dc_local = TriState::Yes;
  for (const auto* comps : {&c1_components, &c2_components})
    for (const auto& c : *comps) {
      if (c.kind == ComponentKind::Point) continue;
      if (c.kind == ComponentKind::FullLine) {
        dc_local = TriState::No;
        q.evidence.push_back({"dc", std::string(to_string(c.owner)) + " is constant, so its critical set is the whole line"});
      } else if (dc_local != TriState::No) {
        dc_local = c.certified ? TriState::No : TriState::WindowLimited;
        q.evidence.push_back({"dc", std::string(to_string(c.owner)) + " has a plateau on [" + fmt(c.x_lo) + ", " +
                                        fmt(c.x_hi) + "] (tolerance-based)"});
      }
    }
  if (dc_local == TriState::No) q.dc = TriState::No;
  else if (q.ts == TriState::Yes) q.dc = dc_local;
  else q.dc = TriState::WindowLimited;

  q.z_f = accumulation.distinct_levels(w.tol.tau_val);
  q.nts = q.ts;
  q.ndc = tri_and(q.nts, q.dc);
  q.pts = tri_and(q.nts, q.z_f.empty() ? TriState::Yes : TriState::No);
  q.pdc = tri_and(q.pts, q.dc);
  if (!q.z_f.empty()) {
    std::string lv;
    for (double z : q.z_f) lv += (lv.empty() ? "" : ", ") + fmt(z);
    q.evidence.push_back({"pts", "critical values accumulate at {" + lv + "}"});
  }

  // Minimality: at most one level per owner and side.
  bool many = false;
  for (Owner o : {Owner::C1, Owner::C2})
    for (Side s : {Side::Minus, Side::Plus}) {
      std::vector<double> lv;
      for (const auto& l : accumulation.levels)
        if (l.owner == o && l.side == s &&
            std::none_of(lv.begin(), lv.end(), [&](double v) {
              return std::abs(v - l.p) <= w.tol.tau_val * std::max(1.0, std::abs(v));
            }))
          lv.push_back(l.p);
      if (lv.size() == 1) (s == Side::Minus ? q.z_m : q.z_M)[index(o)] = lv[0];
      if (lv.size() >= 2) {
        many = true;
        q.evidence.push_back({"minimal", std::to_string(lv.size()) + " accumulation levels for " +
                                             std::string(to_string(o)) + " as x -> " + std::string(to_string(s))});
      }
    }
  if (many) q.minimal = TriState::No;
  else q.minimal = q.nts == TriState::Yes ? TriState::Yes : TriState::WindowLimited;
  return q;
}

SeparationReport check_separation(const FunctionExpr& c1, const FunctionExpr& c2, const Window& w) {
  w.validate();
  std::size_t n = std::max<std::size_t>(w.tol.min_cells, static_cast<std::size_t>(std::ceil(w.tol.cells_per_unit * w.width())));
  double h = w.width() / static_cast<double>(n);
  std::vector<double> gap(n + 1);
  parallel_for(n + 1, [&](std::size_t i) {
    double x = i == n ? w.x_hi : w.x_lo + static_cast<double>(i) * h;
    double a = c1.eval(x), b = c2.eval(x);
    if (!std::isfinite(a)) throw DomainError("c1 is not finite at x = " + fmt(x));
    if (!std::isfinite(b)) throw DomainError("c2 is not finite at x = " + fmt(x));
    gap[i] = b - a;
  });
  for (std::size_t i = 0; i <= n; ++i)
    if (!(gap[i] > 0.0)) {
      double x = i == n ? w.x_hi : w.x_lo + static_cast<double>(i) * h;
      throw SeparationError("c1 and c2 intersect: c2 - c1 = " + fmt(gap[i]) + " at x = " + fmt(x), x, gap[i]);
    }
  std::size_t k = static_cast<std::size_t>(std::min_element(gap.begin(), gap.end()) - gap.begin());
  // Golden-section refinement in the neighbouring cells.
  double a = w.x_lo + static_cast<double>(k == 0 ? 0 : k - 1) * h;
  double b = std::min(w.x_hi, w.x_lo + static_cast<double>(k + 1) * h);
  auto g = [&](double x) { return c2.eval(x) - c1.eval(x); };
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double g1 = g(x1), g2 = g(x2);
  for (int it = 0; it < 60 && b - a > w.tol.tau_x; ++it) {
    if (g1 < g2) {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - r * (b - a);
      g1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + r * (b - a);
      g2 = g(x2);
    }
  }
  SeparationReport rep{gap[k], w.x_lo + static_cast<double>(k) * h};
  double xm = 0.5 * (a + b), gm = g(xm);
  if (gm < rep.min_gap) rep = {gm, xm};
  if (!(rep.min_gap > 0.0))
    throw SeparationError("c1 and c2 intersect: c2 - c1 = " + fmt(rep.min_gap) + " at x = " + fmt(rep.x_at_min),
                          rep.x_at_min, rep.min_gap);
  return rep;
}

}  // namespace reebstrip
