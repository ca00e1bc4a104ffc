#include "igbounds/real.hpp"

#include <cstdio>

extern "C" {
#include <quadmath.h>
}

namespace igbounds {

std::string format_real(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string format_real(const quad& v, int digits) {
  char buf[80];
  quadmath_snprintf(buf, sizeof buf, "%.*Qg", digits, v.backend().value());
  return buf;
}

}  // namespace igbounds
