#pragma once

#include <cmath>
#include <random>

#include "igbounds/real.hpp"

namespace igbounds::testing {

template <class Real>
Real rel_diff(const Real& got, const Real& want) {
  using std::abs;
  return abs(got - want) / abs(want);
}

/// Deterministic source of random cases for property tests.
class CaseGen {
 public:
  explicit CaseGen(unsigned seed = 20240611u) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  // A non-integer parameter away from integers by at least `gap`.
  double off_integer(double lo, double hi, double gap = 1e-3) {
    for (;;) {
      const double a = uniform(lo, hi);
      if (std::abs(a - std::round(a)) > gap) return a;
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace igbounds::testing
