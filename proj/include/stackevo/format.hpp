#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace stackevo {

/// Canonical float formatting used in all JSON artifacts: shortest form with
/// 9 significant digits, so save(load(x)) is byte-stable.
inline std::string format_double(double x, int significant = 9) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant, x);
  return buf;
}

/// Rounds to the nearest double representable by a 9-significant-digit
/// decimal. Generators quantize sampled payoffs so instance files are exact.
inline double quantize9(double x) {
  return std::strtod(format_double(x).c_str(), nullptr);
}

}  // namespace stackevo
