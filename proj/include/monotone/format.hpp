#pragma once

#include <cstdio>
#include <string>

namespace monotone {

// shortest round-trippable decimal form, stable across runs; negative zero
// canonicalizes to "0"
inline std::string g17(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace monotone
