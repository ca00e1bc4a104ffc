#pragma once

// Foundations shared by every bound: the constant b_a, falling factorials,
// the complete gamma function, and a cancellation-free (x+b)^a - x^a.
//
// Extreme inputs may overflow to ±infinity instead of raising; callers that
// need the full range should use the quad instantiations.

#include <boost/math/special_functions/zeta.hpp>

#include "igbounds/real.hpp"

namespace igbounds {

/// (u)_j = u (u-1) ... (u-j+1); the empty product (j = 0) is 1.
template <class Real>
Real falling_factorial(Real u, int j) {
  detail::require(j >= 0, "falling_factorial: j must be >= 0");
  Real p = 1;
  for (int i = 0; i < j; ++i) p *= u - Real(i);
  return p;
}

/// Half-width of the window around a = 1 where b_a is evaluated by series.
inline constexpr double kBConstSeriesWindow = 1e-4;

namespace detail {

// log b_a for a = 1 + h, |h| small. With lnΓ(2+h) = (1-γ)h +
// Σ_{m≥2} (-1)^m (ζ(m)-1) h^m / m, dividing by h gives the series below.
template <class Real>
Real log_b_near_one(Real h) {
  Real sum = 1 - euler_gamma<Real>();
  Real hp = 1;  // h^{m-1}
  for (int m = 2; m <= 14; ++m) {
    hp *= h;
    const Real term = (boost::math::zeta(Real(m)) - 1) * hp / Real(m);
    sum += (m % 2 == 0) ? term : -term;
  }
  return sum;
}

}  // namespace detail

/// b_a = Γ(a+1)^{1/(a-1)} for a > -1, extended continuously by e^{1-γ} at
/// a = 1. Strictly increasing from 0 (a → -1) through b_0 = 1, b_2 = 2.
template <class Real>
Real b_const(Real a) {
  detail::require_finite(a, "b_const: a must be finite");
  detail::require(a > -1, "b_const: a must be > -1");
  const Real h = a - 1;
  if (abs(h) < Real(kBConstSeriesWindow)) return exp(detail::log_b_near_one(h));
  return exp(lgamma(a + 1) / h);
}

/// b_a together with its parameter.
template <class Real>
struct BConstant {
  Real a;
  Real b;

  static BConstant make(Real a) { return BConstant{a, b_const(a)}; }
};

/// Γ(a) for a > 0.
template <class Real>
Real gamma_pos(Real a) {
  detail::require_finite(a, "gamma_pos: a must be finite");
  detail::require(a > 0, "gamma_pos: a must be > 0");
  return tgamma(a);
}

/// Below this ratio b/x, pow_diff always uses the expm1/log1p form.
inline constexpr double kPowDiffSmallRatio = 1e-3;

/// (x+b)^a - x^a for x, b > 0 without cancellation.
///
/// The expm1/log1p form x^a·expm1(a·log1p(b/x)) is used when b/x is small
/// and also whenever |a·log1p(b/x)| < 1/2, where the two powers are within a
/// factor e^{1/2} of each other and direct subtraction would cancel.
template <class Real>
Real pow_diff(Real x, Real b, Real a) {
  detail::require_positive(x, "pow_diff: x must be > 0");
  detail::require_positive(b, "pow_diff: b must be > 0");
  detail::require_finite(a, "pow_diff: a must be finite");
  const Real ratio = b / x;
  const Real t = a * log1p(ratio);
  if (ratio <= Real(kPowDiffSmallRatio) || abs(t) < Real(0.5)) return pow(x, a) * expm1(t);
  return pow(x + b, a) - pow(x, a);
}

}  // namespace igbounds
