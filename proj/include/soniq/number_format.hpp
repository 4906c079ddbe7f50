#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace soniq {

// Shortest decimal that parses back to exactly `v`.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace soniq
