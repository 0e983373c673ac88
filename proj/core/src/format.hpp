#pragma once

#include <cstdio>
#include <string>

namespace gramframe::detail {

/// Short %g rendering for error messages.
inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace gramframe::detail
