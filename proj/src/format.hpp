#pragma once

#include <cstdio>
#include <set>
#include <string>

namespace txconflict::detail {

inline std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

inline std::string join(const std::set<std::string>& names, const std::string& sep) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += sep;
    out += n;
  }
  return out;
}

}  // namespace txconflict::detail
