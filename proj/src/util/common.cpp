#include <charconv>
#include <cmath>

#include "reebstrip/common.hpp"
#include "reebstrip/error.hpp"
#include "reebstrip/tails.hpp"
#include "reebstrip/window.hpp"

namespace reebstrip {

std::string_view to_string(Owner o) { return o == Owner::C1 ? "c1" : "c2"; }
std::string_view to_string(Side s) { return s == Side::Minus ? "-inf" : "+inf"; }

std::string_view to_string(TriState t) {
  switch (t) {
    case TriState::Yes: return "Yes";
    case TriState::No: return "No";
    case TriState::WindowLimited: return "WindowLimited";
  }
  return "?";
}

std::string_view to_string(Confidence c) {
  return c == Confidence::DeclaredTail ? "DeclaredTail" : "WindowLimited";
}

TriState tri_and(TriState a, TriState b) {
  if (a == TriState::No || b == TriState::No) return TriState::No;
  if (a == TriState::Yes && b == TriState::Yes) return TriState::Yes;
  return TriState::WindowLimited;
}

TriState tri_not(TriState a) {
  if (a == TriState::Yes) return TriState::No;
  if (a == TriState::No) return TriState::Yes;
  return a;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

double parse_num(std::string_view s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw PreconditionError("bad number in tail spec: '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string Tail::describe() const {
  switch (kind) {
    case TailKind::Unknown: return "unknown";
    case TailKind::FiniteLimit: return "limit:" + fmt(lo);
    case TailKind::DivergesPlus: return "+inf";
    case TailKind::DivergesMinus: return "-inf";
    case TailKind::BoundedOscillation: return "osc:" + fmt(lo) + ":" + fmt(hi);
  }
  return "unknown";
}

Tail Tail::parse(std::string_view text) {
  if (text == "unknown") return unknown();
  if (text == "+inf") return diverges_plus();
  if (text == "-inf") return diverges_minus();
  if (text.starts_with("limit:")) return limit(parse_num(text.substr(6)));
  if (text.starts_with("osc:")) {
    auto rest = text.substr(4);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw PreconditionError("osc tail needs osc:lo:hi");
    Tail t = oscillation(parse_num(rest.substr(0, colon)), parse_num(rest.substr(colon + 1)));
    if (!(t.lo < t.hi)) throw PreconditionError("osc tail needs lo < hi");
    return t;
  }
  throw PreconditionError("unknown tail spec '" + std::string(text) + "'");
}

bool TailMetadata::all_declared() const {
  for (auto& row : tails)
    for (auto& t : row)
      if (!t.declared()) return false;
  return true;
}

void TailMetadata::validate() const {
  for (auto& row : tails)
    for (auto& t : row) {
      if (t.kind == TailKind::FiniteLimit && !std::isfinite(t.lo)) throw PreconditionError("tail limit must be finite");
      if (t.kind == TailKind::BoundedOscillation && !(t.lo < t.hi)) throw PreconditionError("oscillation tail needs lo < hi");
    }
}

void Window::validate() const {
  if (!(x_lo < x_hi)) throw PreconditionError("window needs x_lo < x_hi");
  if (!(value_lo < value_hi)) throw PreconditionError("window needs value_lo < value_hi");
  if (!std::isfinite(x_lo) || !std::isfinite(x_hi) || !std::isfinite(value_lo) || !std::isfinite(value_hi))
    throw PreconditionError("window bounds must be finite");
}

}  // namespace reebstrip
