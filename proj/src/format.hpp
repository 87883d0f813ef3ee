#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace levar::detail {

// 17 significant digits; non-finite values become JSON null.
inline std::string json_number(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace levar::detail
