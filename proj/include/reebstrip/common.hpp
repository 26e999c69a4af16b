#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace reebstrip {

enum class Owner { C1, C2 };
/// Direction of approach: x -> -inf or x -> +inf.
enum class Side { Minus, Plus };
enum class TriState { Yes, No, WindowLimited };
enum class Confidence { WindowLimited, DeclaredTail };

struct Diagnostic {
  std::string code;     // e.g. "grid-too-coarse", "unresolved"
  std::string message;
  double x_lo = 0.0;
  double x_hi = 0.0;
};

using Diagnostics = std::vector<Diagnostic>;

std::string_view to_string(Owner o);
std::string_view to_string(Side s);
std::string_view to_string(TriState t);
std::string_view to_string(Confidence c);

inline int index(Owner o) { return o == Owner::C1 ? 0 : 1; }
inline int index(Side s) { return s == Side::Minus ? 0 : 1; }

TriState tri_and(TriState a, TriState b);
TriState tri_not(TriState a);

}  // namespace reebstrip
