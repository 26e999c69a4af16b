#include <cmath>
#include <cstdio>
#include <numbers>

#include "reebstrip/error.hpp"
#include "reebstrip/io.hpp"

namespace reebstrip {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string("(") + buf + ")";
}

double param(const PresetParams& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

// Integral of e^{-t^2} sin^2 t over the line.
double gauss_sin2() { return 0.5 * std::sqrt(std::numbers::pi) * (1.0 - std::exp(-1.0)); }

void check_keys(const PresetParams& p, std::initializer_list<const char*> allowed, const std::string& name) {
  for (const auto& [k, v] : p) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ConfigError("preset '" + name + "' has no parameter '" + k + "'", 0);
    if (!std::isfinite(v)) throw ConfigError("preset parameter '" + k + "' must be finite", 0);
  }
}

Window make_window(double x_lo, double x_hi, double v_lo, double v_hi) {
  Window w;
  w.x_lo = x_lo;
  w.x_hi = x_hi;
  w.value_lo = v_lo;
  w.value_hi = v_hi;
  return w;
}

Preset ex1_3(const PresetParams& p) {
  check_keys(p, {}, "ex1-3");
  Preset s;
  s.name = "ex1-3";
  s.description = "c1 = sin x + (2 + sin(e^{x^2})) / (4(x^2+1)), c2 = sin x + 1";
  s.job.c1 = "sin(x)+(2+sin(exp(x^2)))/(4*(x^2+1))";
  s.job.c2 = "sin(x)+1";
  s.job.window = make_window(-20, 20, -2, 2.5);
  for (Side d : {Side::Minus, Side::Plus}) {
    s.job.tails.get(Owner::C1, d) = Tail::oscillation(-1, 1);
    s.job.tails.get(Owner::C2, d) = Tail::oscillation(0, 2);
  }
  s.oracle_window = make_window(-1.5, 1.5, -2, 2.5);
  return s;
}

Preset thm4_12(const std::string& name, const PresetParams& p) {
  check_keys(p, {"a"}, name);
  double a = param(p, "a", 0.0);
  if (a < 0) throw ConfigError("preset '" + name + "': a must be >= 0", 0);
  bool first = name == "thm4-1";
  Preset s;
  s.name = name;
  s.job.c1 = first ? "-cumint(exp(t)*sin(t)^2)" : "-cumint(exp(-t^2)*sin(t)^2)";
  s.job.c2 = "x^2/(x^4+1)+" + num(a);
  s.description = (first ? "c1 = -int_{-inf}^x e^t sin^2 t dt" : "c1 = -int_{-inf}^x e^{-t^2} sin^2 t dt") +
                  std::string(", c2 = x^2/(x^4+1) + a");
  double top = std::max(2.0, a + 1.5);
  s.job.window = first ? make_window(-40, 8, -2, top) : make_window(-25, 10, -2, top);
  s.job.tails.get(Owner::C1, Side::Minus) = Tail::limit(0);
  s.job.tails.get(Owner::C1, Side::Plus) = first ? Tail::diverges_minus() : Tail::limit(-gauss_sin2());
  s.job.tails.get(Owner::C2, Side::Minus) = Tail::limit(a);
  s.job.tails.get(Owner::C2, Side::Plus) = Tail::limit(a);
  // Far out, c2(x_lo) = a + 1/x_lo^2 crowds the minimum value a.
  s.oracle_window = s.job.window;
  s.oracle_window.x_lo = -15;
  s.expect_digraph = a == 0.0 ? DigraphVerdict::IsReebDigraph : DigraphVerdict::NotReebDigraph;
  s.expect_kind = KindVerdict::EAGraph;
  return s;
}

Preset thm4_3(const PresetParams& p) {
  check_keys(p, {"a", "b", "q"}, "thm4-3");
  double t0 = param(p, "q", 0.0);
  double a = param(p, "a", t0 == 0.0 ? 0.0 : 1.0);
  double b = param(p, "b", 4.0);
  if (a < 0 || b <= 0) throw ConfigError("preset 'thm4-3': needs a >= 0 and b > 0", 0);
  Preset s;
  s.name = "thm4-3";
  s.description = "c1 = int_{-inf}^x e^{-t^2} Q(t) dt with Q = (x + t0) sin^2 x, c2 = b x^2/(x^4+1) + a";
  s.job.c1 = t0 == 0.0 ? "cumint(exp(-t^2)*t*sin(t)^2)" : "cumint(exp(-t^2)*(t+" + num(t0) + ")*sin(t)^2)";
  s.job.c2 = num(b) + "*x^2/(x^4+1)+" + num(a);
  s.job.window = make_window(-30, 10, -1, b / 2 + a + 1);
  s.job.tails.get(Owner::C1, Side::Minus) = Tail::limit(0);
  s.job.tails.get(Owner::C1, Side::Plus) = Tail::limit(t0 * gauss_sin2());
  s.job.tails.get(Owner::C2, Side::Minus) = Tail::limit(a);
  s.job.tails.get(Owner::C2, Side::Plus) = Tail::limit(a);
  s.oracle_window = s.job.window;
  s.expect_digraph = t0 == 0.0 && a == 0.0 ? DigraphVerdict::IsReebDigraph : DigraphVerdict::NotReebDigraph;
  s.expect_kind = KindVerdict::EAGraph;
  return s;
}

}  // namespace

std::vector<std::string> preset_names() { return {"ex1-3", "thm4-1", "thm4-2", "thm4-3"}; }

Preset make_preset(const std::string& name, const PresetParams& params) {
  if (name == "ex1-3" || name == "example1-3") return ex1_3(params);
  if (name == "thm4-1" || name == "thm4-2") return thm4_12(name, params);
  if (name == "thm4-3") return thm4_3(params);
  throw ConfigError("unknown preset '" + name + "'", 0);
}

std::vector<Preset> corpus_presets() {
  return {make_preset("ex1-3"),
          make_preset("thm4-1", {{"a", 0.0}}),
          make_preset("thm4-1", {{"a", 0.5}}),
          make_preset("thm4-2", {{"a", 0.0}}),
          make_preset("thm4-3", {{"q", 0.0}, {"a", 0.0}, {"b", 4.0}}),
          make_preset("thm4-3", {{"q", 1.0}, {"a", 1.0}, {"b", 4.0}})};
}

}  // namespace reebstrip
