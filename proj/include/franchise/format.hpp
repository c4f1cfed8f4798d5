#pragma once

#include <cstdio>
#include <string>

namespace franchise {

// 17 significant digits: enough to round-trip any double, and byte-stable
// across runs.  NaN prints as "nan".
inline std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_long(long v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%ld", v);
  return buf;
}

}  // namespace franchise
