#pragma once

#include <cstdio>
#include <string>

namespace gmrfig {

/// Shortest printf form that round-trips a double (17 significant digits).
inline std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace gmrfig
