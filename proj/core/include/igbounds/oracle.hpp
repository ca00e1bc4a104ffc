#pragma once

// Reference values of Γ(a,x) for every real a and x > 0, independent of the
// bounds under test. Four methods are available:
//
//   continued fraction   x >= max(1, a+1), any a
//   series complement    a > 0, x < a+1
//   backward recursion   a <= 0, from a base in [0,1) via
//                        Γ(c,x) = (Γ(c+1,x) - x^c e^{-x}) / c
//   quadrature           any (a, x): the defining integral after t = x e^s
//
// igamma_ref routes to the first three; in verification mode it also runs
// the quadrature and folds the disagreement into the error estimate.
//
// Like the bounds, results carry e^{x}Γ(a,x) so that large x stays in range.

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "igbounds/bounds.hpp"

namespace igbounds {

enum class OracleMethod { ContinuedFraction, SeriesComplement, Quadrature, BackwardRecursed };

std::string_view method_name(OracleMethod m);

/// Raised when a method cannot deliver a value: no convergence, too many
/// subdivisions, or two methods disagreeing beyond kCrossCheckLimit.
class OracleFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Real>
struct OracleResult {
  Real scaled;  // e^{x} Γ(a,x)
  Real x;
  OracleMethod method;
  Real rel_err;  // estimated relative error, >= 0

  Real value() const { return scaled * exp(-x); }
  /// Absolute error estimate of value().
  Real err_estimate() const { return rel_err * value(); }
  ExpScaled<Real> as_scaled() const { return {scaled, x}; }
};

enum class OracleMode { Fast, Verify };

/// Relative disagreement between two methods that aborts igamma_ref.
inline constexpr double kCrossCheckLimit = 1e-8;
/// Relative error above which recursion and series results are replaced by
/// quadrature.
inline constexpr double kFallbackLimit = 1e-9;
/// Series results are deferred when e^{x}γ(a,x) exceeds this share of e^{x}Γ(a).
inline constexpr double kSeriesCancellationShare = 0.99;
inline constexpr int kMaxTerms = 10000;

namespace detail {

// Relative tolerance for quadrature: 1e-12 in double, 1e-28 in binary128.
template <class Real>
Real quadrature_tolerance() {
  if constexpr (std::is_same_v<Real, double>) return 1e-12;
  return Real(1e-28);
}

template <class Real>
std::string describe(const char* what, const Real& a, const Real& x) {
  return std::string(what) + " (a = " + format_real(a) + ", x = " + format_real(x) + ")";
}

// Modified Lentz evaluation of Γ(a,x) / (x^a e^{-x}) =
//   1/(x+1-a- 1(1-a)/(x+3-a- 2(2-a)/(x+5-a- ...))).
template <class Real>
OracleResult<Real> cf_raw(Real a, Real x) {
  const Real eps = epsilon<Real>();
  const Real tiny = std::numeric_limits<Real>::min() / eps;
  Real b = x + 1 - a;
  Real c = 1 / tiny;
  Real d = 1 / b;
  Real h = d;
  int n = 1;
  for (; n <= kMaxTerms; ++n) {
    const Real an = -Real(n) * (Real(n) - a);
    b += 2;
    d = an * d + b;
    if (abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (abs(c) < tiny) c = tiny;
    d = 1 / d;
    const Real delta = d * c;
    h *= delta;
    if (abs(delta - 1) < eps) break;
  }
  if (n > kMaxTerms) throw OracleFailure(describe("continued fraction did not converge", a, x));
  return {pow(x, a) * h, x, OracleMethod::ContinuedFraction, Real(4 + sqrt(Real(n))) * eps};
}

// Γ(a) - γ(a,x) with γ(a,x) = x^a e^{-x} Σ x^n / (a(a+1)...(a+n)), a > 0.
// Returns the share γ/Γ through `share` for the cancellation guard.
template <class Real>
OracleResult<Real> series_raw(Real a, Real x, Real* share = nullptr) {
  const Real eps = epsilon<Real>();
  Real term = 1 / a;
  Real sum = term;
  int n = 1;
  for (; n <= kMaxTerms; ++n) {
    term *= x / (a + Real(n));
    sum += term;
    if (term < sum * eps) break;
  }
  if (n > kMaxTerms) throw OracleFailure(describe("series did not converge", a, x));
  const Real lower = pow(x, a) * sum;   // e^{x} γ(a,x)
  const Real full = exp(x) * tgamma(a);  // e^{x} Γ(a)
  const Real scaled = full - lower;
  if (share) *share = lower / full;
  const Real rel = (8 * eps) * (full + lower) / abs(scaled);
  return {scaled, x, OracleMethod::SeriesComplement, rel};
}

// e^{x} E_1(x) = e^{x} Γ(0,x).
template <class Real>
OracleResult<Real> exp_integral_scaled(Real x) {
  if (x >= 1) return cf_raw(Real(0), x);
  const Real eps = epsilon<Real>();
  Real term = 1;  // (-x)^n / n!
  Real sum = 0;
  Real mag = 0;
  for (int n = 1; n <= kMaxTerms; ++n) {
    term *= -x / Real(n);
    const Real add = term / Real(n);
    sum += add;
    mag += abs(add);
    if (abs(add) < eps * abs(sum)) break;
  }
  const Real e1 = -euler_gamma<Real>() - log(x) - sum;
  const Real mag_total = euler_gamma<Real>() + abs(log(x)) + mag;
  return {exp(x) * e1, x, OracleMethod::SeriesComplement, (8 * eps) * mag_total / abs(e1)};
}

template <class Real>
OracleResult<Real> recursed_raw(Real a, Real x) {
  const Real eps = epsilon<Real>();
  int k = 0;
  OracleResult<Real> base{};
  Real c0 = 0;
  if (a == floor(a)) {
    k = static_cast<int>(-a);
    base = exp_integral_scaled(x);
  } else {
    k = static_cast<int>(ceil(-a));
    c0 = a + Real(k);
    base = (x < c0 + 1) ? series_raw(c0, x) : cf_raw(c0, x);
  }
  Real s = base.scaled;
  Real err = base.rel_err * abs(s);
  for (int j = 1; j <= k; ++j) {
    const Real c = c0 - Real(j);
    const Real xc = pow(x, c);
    const Real next = (s - xc) / c;
    err = (err + eps * (abs(xc) + abs(s))) / abs(c) + eps * abs(next);
    s = next;
  }
  return {s, x, OracleMethod::BackwardRecursed, err / abs(s)};
}

// J(c, x) = ∫_0^∞ exp(c s - x (e^s - 1)) ds for c <= 1, so that
// e^{x} Γ(c,x) = x^c J. The integral runs over doubling segments until
// the tail bound ∫_T^∞ t^{c-1} e^{-t} dt <= T^{c-1} e^{-T} (valid for c <= 1,
// T = x e^S) drops below the tolerance. With s = L u, L = 1/max(x,1), the
// first segment and the integrand are O(1); the integrator's error floor is
// absolute, so a tiny interval would never meet a relative target.
template <class Real>
Real tail_integral(Real c, Real x, Real* rel_err) {
  using boost::math::quadrature::gauss_kronrod;
  const Real tol = quadrature_tolerance<Real>();
  const Real L = 1 / std::max(x, Real(1));
  const auto f = [c, x, L](Real u) { return exp(c * L * u - x * expm1(L * u)); };
  const auto tail_bound = [c, x](Real s) { return exp((c - 1) * s - x * expm1(s)) / x; };
  Real lo = 0;
  Real hi = 2;
  Real total = 0;
  Real abs_err = 0;
  for (int segment = 0; segment < 200; ++segment) {
    Real err = 0;
    total += gauss_kronrod<Real, 31>::integrate(f, lo, hi, 15, tol, &err);
    abs_err += err;
    const Real tail = tail_bound(L * hi) / L;
    if (total > 0 && tail <= tol * total / 10) {
      *rel_err = (abs_err + tail) / total + 16 * epsilon<Real>();
      return L * total;
    }
    lo = hi;
    hi *= 2;
  }
  throw OracleFailure(describe("quadrature subdivision limit exceeded", c, x));
}

template <class Real>
OracleResult<Real> quad_raw(Real a, Real x) {
  if (a <= 1) {
    Real rel = 0;
    const Real j = tail_integral(a, x, &rel);
    return {pow(x, a) * j, x, OracleMethod::Quadrature, rel};
  }
  // Γ(a,x) = x^{a-1}e^{-x} Σ_{j<k} (a-1)_j x^{-j} + (a-1)_k Γ(a-k,x) with
  // a-k in (0,1]; every term is positive.
  const int k = static_cast<int>(ceil(a)) - 1;
  const Real c = a - Real(k);
  Real rel = 0;
  const Real j = tail_integral(c, x, &rel);
  Real partial = 0;
  Real coef = 1;
  Real xp = 1;
  for (int i = 0; i < k; ++i) {
    partial += coef * xp;
    coef *= a - 1 - Real(i);
    xp /= x;
  }
  partial *= pow(x, a - 1);
  const Real shifted = coef * pow(x, c) * j;
  const Real total = partial + shifted;
  return {total, x, OracleMethod::Quadrature, rel * shifted / total + 8 * Real(k) * epsilon<Real>()};
}

template <class Real>
OracleResult<Real> analytic_raw(Real a, Real x) {
  if (x >= 1 && x >= a + 1) return cf_raw(a, x);
  if (a > 0) return series_raw(a, x);
  return recursed_raw(a, x);
}

}  // namespace detail

/// Γ(a,x) by continued fraction; requires x >= max(1, a). Below x = a the
/// fraction loses accuracy quickly as a grows.
template <class Real>
OracleResult<Real> igamma_cf(Real a, Real x) {
  detail::require_finite(a, "igamma_cf: a must be finite");
  detail::require_x(x, "igamma_cf: x must be > 0");
  detail::require(x >= 1 && x >= a, "igamma_cf: needs x >= max(1, a)");
  return detail::cf_raw(a, x);
}

/// Γ(a,x) by quadrature of the defining integral, any a and x > 0.
template <class Real>
OracleResult<Real> igamma_quad(Real a, Real x) {
  detail::require_finite(a, "igamma_quad: a must be finite");
  detail::require_x(x, "igamma_quad: x must be > 0");
  auto r = detail::quad_raw(a, x);
  if (!(r.rel_err <= Real(kFallbackLimit)))
    throw OracleFailure(detail::describe("quadrature missed its tolerance", a, x));
  return r;
}

/// Γ(a,x) = Γ(a) - γ(a,x) for a > 0, x < a+1. Defers to the continued
/// fraction or quadrature when the subtraction cancels too much.
template <class Real>
OracleResult<Real> igamma_series(Real a, Real x) {
  detail::require_finite(a, "igamma_series: a must be finite");
  detail::require(a > 0, "igamma_series: a must be > 0");
  detail::require_x(x, "igamma_series: x must be > 0");
  detail::require(x < a + 1, "igamma_series: needs x < a+1");
  Real share = 0;
  auto r = detail::series_raw(a, x, &share);
  if (share <= Real(kSeriesCancellationShare)) return r;
  if (x >= 1) return detail::cf_raw(a, x);
  return igamma_quad(a, x);
}

/// Γ(a,x) for a <= 0 by backward recursion from Γ(c,x), c = a + ceil(-a)
/// (or from Γ(0,x) for integer a). Falls back to quadrature when the
/// accumulated cancellation exceeds kFallbackLimit.
template <class Real>
OracleResult<Real> igamma_recursed(Real a, Real x) {
  detail::require_finite(a, "igamma_recursed: a must be finite");
  detail::require(a <= 0, "igamma_recursed: a must be <= 0");
  detail::require_x(x, "igamma_recursed: x must be > 0");
  auto r = detail::recursed_raw(a, x);
  if (r.rel_err <= Real(kFallbackLimit)) return r;
  return igamma_quad(a, x);
}

/// Routes (a, x) to its method. In Verify mode a second, independent method
/// is evaluated too; rel_err becomes max(internal estimate, disagreement) and
/// a disagreement above kCrossCheckLimit raises OracleFailure.
template <class Real>
OracleResult<Real> igamma_ref(Real a, Real x, OracleMode mode = OracleMode::Fast) {
  detail::require_finite(a, "igamma_ref: a must be finite");
  detail::require_x(x, "igamma_ref: x must be > 0");
  OracleResult<Real> primary{};
  if (a > 0 && x < a + 1)
    primary = igamma_series(a, x);
  else if (x >= 1)
    primary = detail::cf_raw(a, x);
  else
    primary = igamma_recursed(a, x);
  if (mode == OracleMode::Fast) return primary;

  const OracleResult<Real> second =
      primary.method == OracleMethod::Quadrature ? detail::analytic_raw(a, x) : igamma_quad(a, x);
  const Real gap = abs(primary.scaled - second.scaled) / abs(second.scaled);
  if (!(gap <= Real(kCrossCheckLimit))) {
    std::ostringstream os;
    os << "oracle cross-check failed at a = " << format_real(a) << ", x = " << format_real(x) << ": "
       << method_name(primary.method) << " gives " << format_real(primary.value()) << ", "
       << method_name(second.method) << " gives " << format_real(second.value());
    throw OracleFailure(os.str());
  }
  primary.rel_err = std::max(primary.rel_err, gap);
  return primary;
}

}  // namespace igbounds
