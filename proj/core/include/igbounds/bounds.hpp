#pragma once

// Lower and upper bounds on Γ(a,x) for every real a and x > 0, the forward
// and backward shift operators that transport a bound across parameter
// values, and the dispatcher that assembles a certified bracket.
//
// Every bound here is e^{-x} times an algebraic expression, so each function
// returns ExpScaled: the scaled part e^{x}·B_a(x) plus x. Comparisons and
// relative errors are taken on the scaled parts, which stay representable
// long after e^{-x} underflows.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "igbounds/bound_spec.hpp"
#include "igbounds/special.hpp"

namespace igbounds {

/// The number scaled·e^{-x}.
template <class Real>
struct ExpScaled {
  Real scaled;
  Real x;

  Real value() const { return scaled * exp(-x); }
};

/// A bound family as a function of (a, x).
template <class Real>
using BoundFn = std::function<ExpScaled<Real>(Real a, Real x)>;

/// Half-width of the window around a = 0 where G_{a;-1} uses its limit form.
inline constexpr double kGBack1ZeroWindow = 1e-6;

namespace detail {

template <class Real>
void require_x(const Real& x, const char* what) {
  require_positive(x, what);
}

// x^{top} Σ_{j<k} (top)_j x^{-j}: the closed-form part of a k-shift.
template <class Real>
Real shift_partial_sum(Real top, int k, Real x) {
  Real sum = 0;
  Real coef = 1;  // (top)_j
  Real xp = 1;    // x^{-j}
  for (int j = 0; j < k; ++j) {
    sum += coef * xp;
    coef *= top - Real(j);
    xp /= x;
  }
  return pow(x, top) * sum;
}

}  // namespace detail

/// G_a(x) for a >= -1: upper bound for -1 <= a < 1 and a > 2, lower bound
/// for 1 < a < 2, equal to Γ(a,x) at a ∈ {1, 2}.
template <class Real>
ExpScaled<Real> G_bound(Real a, Real x) {
  detail::require_finite(a, "G_bound: a must be finite");
  detail::require(a >= -1, "G_bound: a must be >= -1");
  detail::require_x(x, "G_bound: x must be > 0");
  if (a == -1) return {1 / (x * x), x};
  if (a == 0) return {log1p(1 / x), x};
  const Real b = b_const(a);
  return {pow_diff(x, b, a) / (a * b), x};
}

/// g_a(x) for a > 0. Lower bound for 1 < a < 2 and a > 3, upper bound for
/// 2 < a < 3, exact at a ∈ {1, 2, 3}.
template <class Real>
ExpScaled<Real> g_bound(Real a, Real x) {
  detail::require_finite(a, "g_bound: a must be finite");
  detail::require(a > 0, "g_bound: a must be > 0");
  detail::require_x(x, "g_bound: x must be > 0");
  const Real two = 2;
  return {(pow_diff(x, two, a) - pow(two, a)) / (2 * a) + tgamma(a), x};
}

/// Lower bound for a < -1: x^a e^{-x} (x-a-1) / ((x-a)^2 + a).
template <class Real>
ExpScaled<Real> g_lo(Real a, Real x) {
  detail::require_finite(a, "g_lo: a must be finite");
  detail::require(a < -1, "g_lo: a must be < -1");
  detail::require_x(x, "g_lo: x must be > 0");
  const Real u = x - a;
  return {pow(x, a) * (u - 1) / (u * u + a), x};
}

/// Upper bound for a < 0: x^a e^{-x} / (x - a).
template <class Real>
ExpScaled<Real> g_hi(Real a, Real x) {
  detail::require_finite(a, "g_hi: a must be finite");
  detail::require(a < 0, "g_hi: a must be < 0");
  detail::require_x(x, "g_hi: x must be > 0");
  return {pow(x, a) / (x - a), x};
}

/// Forward k-shift of `base` (a bound at parameter a-k) to parameter a:
/// x^{a-1}e^{-x} Σ_{j<k} (a-1)_j x^{-j} + (a-1)_k·base(a-k, x).
/// (a-1)_k >= 0 keeps the direction of `base`; (a-1)_k <= 0 flips it.
template <class Real>
ExpScaled<Real> forward_shift(const BoundFn<Real>& base, Real a, int k, Real x) {
  detail::require(k >= 1, "forward_shift: k must be >= 1");
  detail::require_x(x, "forward_shift: x must be > 0");
  const Real partial = detail::shift_partial_sum(a - 1, k, x);
  return {partial + falling_factorial(a - 1, k) * base(a - Real(k), x).scaled, x};
}

/// Backward k-shift of `base` (a bound at parameter a+k) to parameter a:
/// (base(a+k,x) - x^{a-1+k}e^{-x} Σ_{j<k} (a-1+k)_j x^{-j}) / (a-1+k)_k.
template <class Real>
ExpScaled<Real> backward_shift(const BoundFn<Real>& base, Real a, int k, Real x) {
  detail::require(k >= 1, "backward_shift: k must be >= 1");
  detail::require_x(x, "backward_shift: x must be > 0");
  const Real top = a - 1 + Real(k);
  const Real divisor = falling_factorial(top, k);
  detail::require(divisor != 0, "backward_shift: (a-1+k)_k is zero");
  const Real partial = detail::shift_partial_sum(top, k, x);
  return {(base(a + Real(k), x).scaled - partial) / divisor, x};
}

/// Forward 2-shift of g^lo, a lower bound for a < 1, exact at x = ∞.
template <class Real>
ExpScaled<Real> g_shift2_lo(Real a, Real x) {
  detail::require_finite(a, "g_shift2_lo: a must be finite");
  detail::require(a < 1, "g_shift2_lo: a must be < 1");
  detail::require_x(x, "g_shift2_lo: x must be > 0");
  const Real den = x * x + (4 - 2 * a) * x + (a - 1) * (a - 2);
  return {pow(x, a) * (x + 3 - a) / den, x};
}

/// Backward 1-shift of G, a lower bound for -2 < a < 1, exact at x = 0.
/// Within kGBack1ZeroWindow of a = 0 the a → 0 limit
/// e^{-x}[(1 + x/b_1) ln(1 + b_1/x) - 1] is used.
template <class Real>
ExpScaled<Real> G_back1(Real a, Real x) {
  detail::require_finite(a, "G_back1: a must be finite");
  detail::require(a > -2 && a < 1, "G_back1: a must lie in (-2, 1)");
  detail::require_x(x, "G_back1: x must be > 0");
  if (abs(a) < Real(kGBack1ZeroWindow)) {
    const Real b1 = b_const(Real(1));
    return {(1 + x / b1) * log1p(b1 / x) - 1, x};
  }
  return {(G_bound(a + 1, x).scaled - pow(x, a)) / a, x};
}

/// Forward 1-shift of G for 1 < a < 3: upper bound on (1,2), exact at 2,
/// lower bound on (2,3).
template <class Real>
ExpScaled<Real> G_fwd1(Real a, Real x) {
  detail::require_finite(a, "G_fwd1: a must be finite");
  detail::require(a > 1 && a < 3, "G_fwd1: a must lie in (1, 3)");
  detail::require_x(x, "G_fwd1: x must be > 0");
  return {pow(x, a - 1) + (a - 1) * G_bound(a - 1, x).scaled, x};
}

/// Forward 1-shift of g^lo; an upper bound for a < 0 that improves on g^hi.
template <class Real>
ExpScaled<Real> g_shift1_lo(Real a, Real x) {
  detail::require_finite(a, "g_shift1_lo: a must be finite");
  detail::require(a < 0, "g_shift1_lo: a must be < 0");
  detail::require_x(x, "g_shift1_lo: x must be > 0");
  const Real u = x - a;
  return {pow(x, a) * (1 - a + x) / (u * u - a + 2 * x), x};
}

/// max(G_back1, g_shift2_lo): a lower bound for -2 < a < 1 exact at both ends.
template <class Real>
ExpScaled<Real> h_lower(Real a, Real x) {
  detail::require_finite(a, "h_lower: a must be finite");
  detail::require(a > -2 && a < 1, "h_lower: a must lie in (-2, 1)");
  detail::require_x(x, "h_lower: x must be > 0");
  const auto back = G_back1(a, x);
  const auto fwd = g_shift2_lo(a, x);
  return back.scaled >= fwd.scaled ? back : fwd;
}

/// x^{a-1} e^{-x} <= Γ(a,x) for a >= 1.
template <class Real>
ExpScaled<Real> simple_lo(Real a, Real x) {
  detail::require_finite(a, "simple_lo: a must be finite");
  detail::require(a >= 1, "simple_lo: a must be >= 1");
  detail::require_x(x, "simple_lo: x must be > 0");
  return {pow(x, a - 1), x};
}

/// Γ(a,x) <= x^{a-1} e^{-x} / (1 - (a-1)/x) for a >= 1 and x > a - 1.
template <class Real>
ExpScaled<Real> simple_hi(Real a, Real x) {
  detail::require_finite(a, "simple_hi: a must be finite");
  detail::require(a >= 1, "simple_hi: a must be >= 1");
  detail::require_x(x, "simple_hi: x must be > 0");
  detail::require(x > a - 1, "simple_hi: x must be > a - 1");
  return {pow(x, a - 1) / (1 - (a - 1) / x), x};
}

/// Shift count that carries a into (offset-1, offset]: ceil(a) - offset.
template <class Real>
int taming_shift(Real a, int offset) {
  return static_cast<int>(ceil(a)) - offset;
}

/// G forward-shifted from a-k ∈ (1,2] with k = ceil(a)-2; lower bound, a > 2.
template <class Real>
ExpScaled<Real> tamed_lower(Real a, Real x) {
  detail::require_finite(a, "tamed_lower: a must be finite");
  detail::require(a > 2, "tamed_lower: a must be > 2");
  const BoundFn<Real> base = [](Real s, Real t) { return G_bound(s, t); };
  return forward_shift(base, a, taming_shift(a, 2), x);
}

/// g forward-shifted from a-k ∈ (2,3] with k = ceil(a)-3; upper bound, a > 3.
template <class Real>
ExpScaled<Real> tamed_upper(Real a, Real x) {
  detail::require_finite(a, "tamed_upper: a must be finite");
  detail::require(a > 3, "tamed_upper: a must be > 3");
  const BoundFn<Real> base = [](Real s, Real t) { return g_bound(s, t); };
  return forward_shift(base, a, taming_shift(a, 3), x);
}

/// Evaluates a non-generic family; throws for forwardShifted/backwardShifted.
template <class Real>
ExpScaled<Real> evaluate(Family f, Real a, Real x) {
  switch (f) {
    case Family::G: return G_bound(a, x);
    case Family::g: return g_bound(a, x);
    case Family::gLo: return g_lo(a, x);
    case Family::gHi: return g_hi(a, x);
    case Family::gShift2Lo: return g_shift2_lo(a, x);
    case Family::GBack1: return G_back1(a, x);
    case Family::GFwd1: return G_fwd1(a, x);
    case Family::gShift1Lo: return g_shift1_lo(a, x);
    case Family::hMax: return h_lower(a, x);
    case Family::simpleLo: return simple_lo(a, x);
    case Family::simpleHi: return simple_hi(a, x);
    case Family::tamedLower: return tamed_lower(a, x);
    case Family::tamedUpper: return tamed_upper(a, x);
    case Family::forwardShifted:
    case Family::backwardShifted: break;
  }
  throw std::invalid_argument("evaluate: shifted families need a base and a shift");
}

template <class Real>
BoundFn<Real> as_bound_fn(Family f) {
  return [f](Real a, Real x) { return evaluate(f, a, x); };
}

// ---------------------------------------------------------------------------
// Parameter regions and the bracket dispatcher.

enum class RegionTag {
  BelowMinusOne,
  MinusOneToOne,
  ExactOne,
  OneToTwo,
  ExactTwo,
  TwoToThree,
  ExactThree,
  ThreeUp,
};

struct AlphaRegion {
  RegionTag tag;
  bool at_minus_one = false;  // only with MinusOneToOne
  bool at_zero = false;       // only with MinusOneToOne
};

std::string_view region_name(RegionTag tag);

template <class Real>
AlphaRegion classify(Real a) {
  detail::require_finite(a, "classify: a must be finite");
  if (a < -1) return {RegionTag::BelowMinusOne};
  if (a < 1) return {RegionTag::MinusOneToOne, a == -1, a == 0};
  if (a == 1) return {RegionTag::ExactOne};
  if (a < 2) return {RegionTag::OneToTwo};
  if (a == 2) return {RegionTag::ExactTwo};
  if (a < 3) return {RegionTag::TwoToThree};
  if (a == 3) return {RegionTag::ExactThree};
  return {RegionTag::ThreeUp};
}

/// Plain uses the unshifted bounds above a = 3. Tamed shifts G from (1,2]
/// and g from (2,3]. TamedAlt (a > 4) shifts both g and G from (3,4].
enum class Mode { Plain, Tamed, TamedAlt };

std::string_view mode_name(Mode m);
std::optional<Mode> parse_mode(std::string_view s);

template <class Real>
struct Bracket {
  Real a;
  PositiveReal<Real> x;
  ExpScaled<Real> lower;
  ExpScaled<Real> upper;
  BoundSpec lower_spec;
  BoundSpec upper_spec;
};

/// One row of the dispatch table, as printed by `eval --explain`.
struct DispatchRow {
  std::string region;
  std::string mode;
  std::string lower;
  std::string upper;
};

const std::vector<DispatchRow>& dispatch_table();

/// Index into dispatch_table() of the row used for (a, mode).
std::size_t dispatch_row(double a, Mode mode);

namespace detail {

BoundSpec spec_at(Family f, double a);
BoundSpec exact_closed_form_spec(double a);

template <class Real>
struct Side {
  ExpScaled<Real> value;
  BoundSpec spec;
};

template <class Real>
Side<Real> side(Family f, Real a, Real x) {
  return {evaluate(f, a, x), spec_at(f, to_double(a))};
}

template <class Real>
Side<Real> larger(Side<Real> p, Side<Real> q) {
  return p.value.scaled >= q.value.scaled ? p : q;
}

template <class Real>
Side<Real> smaller(Side<Real> p, Side<Real> q) {
  return p.value.scaled <= q.value.scaled ? p : q;
}

template <class Real>
Side<Real> shifted_side(Family base, Real a, int k, Real x) {
  const double ad = to_double(a);
  const auto spec = shifted_spec(spec_at(base, ad - k), ad, k, true);
  return {forward_shift(as_bound_fn<Real>(base), a, k, x), spec};
}

}  // namespace detail

/// Closed form of Γ(a,x)e^{x} at a ∈ {1, 2, 3}.
template <class Real>
Real exact_closed_form_scaled(int a, Real x) {
  switch (a) {
    case 1: return 1;
    case 2: return 1 + x;
    case 3: return 2 + 2 * x + x * x;
    default: throw std::domain_error("exact_closed_form_scaled: a must be 1, 2 or 3");
  }
}

/// A certified pair lower <= Γ(a,x) <= upper, each side tagged with the
/// family that produced it.
template <class Real>
Bracket<Real> bracket(Real a, Real x, Mode mode = Mode::Plain) {
  detail::require_finite(a, "bracket: a must be finite");
  const PositiveReal<Real> px(x);
  using detail::Side;
  Side<Real> lo{}, hi{};
  const double ad = to_double(a);
  switch (classify(a).tag) {
    case RegionTag::BelowMinusOne:
      lo = detail::side(Family::gLo, a, x);
      if (a > -2) lo = detail::larger(lo, detail::side(Family::hMax, a, x));
      hi = detail::side(Family::gShift1Lo, a, x);
      break;
    case RegionTag::MinusOneToOne:
      lo = detail::side(Family::hMax, a, x);
      hi = detail::side(Family::G, a, x);
      if (a < 0) hi = detail::smaller(hi, detail::side(Family::gShift1Lo, a, x));
      break;
    case RegionTag::ExactOne:
    case RegionTag::ExactTwo:
    case RegionTag::ExactThree: {
      const int n = static_cast<int>(ad);
      const ExpScaled<Real> v{exact_closed_form_scaled(n, x), x};
      lo = hi = Side<Real>{v, detail::exact_closed_form_spec(ad)};
      break;
    }
    case RegionTag::OneToTwo:
      lo = detail::side(Family::G, a, x);
      hi = detail::side(Family::GFwd1, a, x);
      break;
    case RegionTag::TwoToThree:
      lo = detail::side(Family::GFwd1, a, x);
      hi = detail::side(Family::g, a, x);
      break;
    case RegionTag::ThreeUp:
      if (mode == Mode::Tamed) {
        lo = detail::side(Family::tamedLower, a, x);
        hi = detail::side(Family::tamedUpper, a, x);
      } else if (mode == Mode::TamedAlt && a > 4) {
        const int k = taming_shift(a, 4);
        lo = detail::shifted_side(Family::g, a, k, x);
        hi = detail::shifted_side(Family::G, a, k, x);
      } else {
        lo = detail::side(Family::g, a, x);
        hi = detail::side(Family::G, a, x);
      }
      break;
  }
  return Bracket<Real>{a, px, lo.value, hi.value, lo.spec, hi.spec};
}

}  // namespace igbounds
