#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "random_pairs.hpp"
#include "reebstrip/critical.hpp"
#include "reebstrip/error.hpp"
#include "reebstrip/io.hpp"

using namespace reebstrip;

namespace {

std::vector<std::pair<std::string, Window>> corpus_functions() {
  std::vector<std::pair<std::string, Window>> out;
  for (const Preset& p : corpus_presets())
    for (const std::string& f : {p.job.c1, p.job.c2})
      if (std::none_of(out.begin(), out.end(), [&](const auto& e) { return e.first == f; })) out.emplace_back(f, p.oracle_window);
  return out;
}

double local_scale(const FunctionExpr& f, double x) {
  double s = 0.0;
  for (int k = -32; k <= 32; ++k) s = std::max(s, std::abs(f.deriv(x + k * 0.005)));
  return s;
}

bool inside(const FunctionExpr& c1, const FunctionExpr& c2, double x, double p) { return c1.eval(x) <= p && p <= c2.eval(x); }

}  // namespace

TEST_CASE("critical points survive grid refinement") {
  for (const auto& [text, w] : corpus_functions()) {
    CAPTURE(text);
    FunctionExpr f = FunctionExpr::parse(text);
    Window fine = w;
    fine.tol.cells_per_unit *= 2;
    fine.tol.min_cells *= 2;
    CriticalSet a = isolate_critical(f, Owner::C1, w), b = isolate_critical(f, Owner::C1, fine);
    REQUIRE(a.components.size() == b.components.size());
    for (std::size_t i = 0; i < a.components.size(); ++i) {
      CHECK(a.components[i].kind == b.components[i].kind);
      if (a.components[i].kind == ComponentKind::Point) CHECK(std::abs(a.components[i].x() - b.components[i].x()) <= w.tol.tau_x);
    }
  }
}

TEST_CASE("critical witnesses are flat") {
  for (const auto& [text, w] : corpus_functions()) {
    CAPTURE(text);
    FunctionExpr f = FunctionExpr::parse(text);
    for (const auto& c : isolate_critical(f, Owner::C1, w).components) {
      if (c.kind != ComponentKind::Point) continue;
      Jet j = f.jet(c.x());
      // Flatness is relative to the local derivative scale; the witness is
      // within tau_x of the root.
      CHECK(std::abs(j.d1) <= w.tol.tau_flat * std::max(1.0, local_scale(f, c.x())) + std::abs(j.d2) * w.tol.tau_x);
    }
  }
}

TEST_CASE("accumulation levels have enough witnesses") {
  PipelineOptions opt;
  opt.build_graph = false;
  for (const Preset& p : corpus_presets()) {
    PipelineResult r = run_pipeline(p.job, opt);
    for (const auto& lvl : r.accumulation.levels) CHECK(lvl.witnesses.size() >= static_cast<std::size_t>(p.job.window.tol.n_acc));
  }
}

TEST_CASE("accumulation on a wider window, both sides") {
  Preset p = make_preset("ex1-3");
  // e^{x^2} overflows beyond |x| = 26.6.
  p.job.window.x_lo = -30;
  p.job.window.x_hi = 30;
  CHECK_THROWS_AS(run_pipeline(p.job), DomainError);
  p.job.window.x_lo = -26;
  p.job.window.x_hi = 26;
  PipelineOptions opt;
  opt.build_graph = false;
  PipelineResult r = run_pipeline(p.job, opt);
  auto lv = r.accumulation.distinct_levels();
  REQUIRE(lv.size() == 2);
  CHECK(lv[0] == doctest::Approx(-1).epsilon(1e-3));
  CHECK(lv[1] == doctest::Approx(1).epsilon(1e-3));
  bool minus = false, plus = false;
  for (const auto& l : r.accumulation.levels) {
    CHECK(l.owner == Owner::C1);
    (l.side == Side::Minus ? minus : plus) = true;
  }
  CHECK(minus);
  CHECK(plus);
}

TEST_CASE("yes verdicts survive window growth") {
  PipelineOptions opt;
  opt.build_graph = false;
  for (const Preset& p : corpus_presets()) {
    CAPTURE(p.name);
    JobConfig small = p.job;
    small.window = p.oracle_window;
    auto a = run_pipeline(small, opt).classification, b = run_pipeline(p.job, opt).classification;
    if (a.ts == TriState::Yes) CHECK(b.ts != TriState::No);
    if (a.dc == TriState::Yes) CHECK(b.dc != TriState::No);
  }
}

TEST_CASE("slice midpoints and gaps") {
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    JobConfig j = testing::random_job(seed);
    FunctionExpr c1 = FunctionExpr::parse(j.c1), c2 = FunctionExpr::parse(j.c2);
    PipelineOptions opt;
    opt.build_graph = false;
    PipelineResult r = run_pipeline(j, opt);
    SliceContext ctx(c1, c2, j.window, j.tails, r.components());
    std::uniform_real_distribution<double> u(j.window.value_lo, j.window.value_hi);
    for (int i = 0; i < 25; ++i) {
      double p = u(rng);
      LevelSlice s = ctx.slice(p);
      for (std::size_t k = 0; k < s.contours.size(); ++k) {
        const Contour& c = s.contours[k];
        CHECK(inside(c1, c2, c.mid(), p));
        if (k > 0) CHECK_FALSE(inside(c1, c2, 0.5 * (s.contours[k - 1].hi + c.lo), p));
      }
    }
  }
}

TEST_CASE("slices are stable inside an event gap") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    JobConfig j = testing::random_job(seed);
    FunctionExpr c1 = FunctionExpr::parse(j.c1), c2 = FunctionExpr::parse(j.c2);
    PipelineOptions opt;
    opt.build_graph = false;
    PipelineResult r = run_pipeline(j, opt);
    std::vector<double> ev = critical_values(r.components());
    for (double x : {j.window.x_lo, j.window.x_hi}) {
      ev.push_back(c1.eval(x));
      ev.push_back(c2.eval(x));
    }
    ev.push_back(j.window.value_lo);
    ev.push_back(j.window.value_hi);
    std::sort(ev.begin(), ev.end());
    SliceContext ctx(c1, c2, j.window, j.tails, r.components());
    for (std::size_t i = 1; i < ev.size(); ++i) {
      double lo = std::max(ev[i - 1], j.window.value_lo), hi = std::min(ev[i], j.window.value_hi);
      if (hi - lo < 1e-3) continue;
      double m = 0.5 * (lo + hi), q = m + 0.2 * (hi - lo);
      LevelSlice a = ctx.slice(m), b = ctx.slice(q);
      REQUIRE(a.contours.size() == b.contours.size());
      for (std::size_t k = 0; k < a.contours.size(); ++k) {
        CHECK(a.contours[k].touch_lo == b.contours[k].touch_lo);
        CHECK(a.contours[k].touch_hi == b.contours[k].touch_hi);
        // Endpoints move along monotone pieces of the curves.
        for (auto [x0, x1] : {std::pair{a.contours[k].lo, b.contours[k].lo}, std::pair{a.contours[k].hi, b.contours[k].hi}}) {
          double slope = INFINITY;
          for (int t = 0; t <= 32; ++t) {
            double x = x0 + (x1 - x0) * t / 32;
            slope = std::min({slope, std::abs(c1.deriv(x)), std::abs(c2.deriv(x))});
          }
          if (x0 != x1) CHECK(std::abs(x1 - x0) * slope <= (q - m) * 1.000001);
        }
      }
    }
  }
}
