#pragma once

#include <string>

#include "reebstrip/io.hpp"

namespace testing {

inline reebstrip::JobConfig job(const std::string& c1, const std::string& c2, double x_lo, double x_hi, double v_lo,
                                double v_hi, const char* minus = "unknown", const char* plus = "unknown") {
  using namespace reebstrip;
  JobConfig j;
  j.c1 = c1;
  j.c2 = c2;
  j.window.x_lo = x_lo;
  j.window.x_hi = x_hi;
  j.window.value_lo = v_lo;
  j.window.value_hi = v_hi;
  for (Owner o : {Owner::C1, Owner::C2}) {
    j.tails.get(o, Side::Minus) = Tail::parse(minus);
    j.tails.get(o, Side::Plus) = Tail::parse(plus);
  }
  return j;
}

}  // namespace testing
