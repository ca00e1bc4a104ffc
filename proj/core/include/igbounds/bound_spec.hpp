#pragma once

// Metadata for the bound families: which side of Γ(a,x) each one lies on in
// each range of a, and where it is exact. The table is transcribed data.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace igbounds {

enum class Family {
  G,                // G_a
  g,                // g_a
  gLo,              // g_a^lo, a < -1
  gHi,              // g_a^hi, a < 0
  gShift2Lo,        // forward 2-shift of g^lo, a < 1
  GBack1,           // backward 1-shift of G, -2 < a < 1
  GFwd1,            // forward 1-shift of G, 1 < a < 3
  gShift1Lo,        // forward 1-shift of g^lo, a < 0
  hMax,             // max(GBack1, gShift2Lo), -2 < a < 1
  simpleLo,         // x^{a-1} e^{-x}, a >= 1
  simpleHi,         // x^{a-1} e^{-x} / (1 - (a-1)/x), a >= 1, x > a-1
  tamedLower,       // G forward-shifted by ceil(a)-2, a > 2
  tamedUpper,       // g forward-shifted by ceil(a)-3, a > 3
  forwardShifted,   // generic forward k-shift of a base family
  backwardShifted,  // generic backward k-shift of a base family
};

enum class Direction { Lower, Upper, Exact };

std::string_view family_name(Family f);
std::string_view direction_name(Direction d);
std::optional<Family> parse_family(std::string_view name);

/// An interval of the real line; infinite ends use ±infinity.
struct AInterval {
  double lo;
  double hi;
  bool lo_closed;
  bool hi_closed;

  template <class Real>
  bool contains(const Real& a) const {
    const bool above = lo_closed ? a >= Real(lo) : a > Real(lo);
    const bool below = hi_closed ? a <= Real(hi) : a < Real(hi);
    return above && below;
  }
  bool is_point() const { return lo == hi && lo_closed && hi_closed; }
  std::string describe() const;
};

struct BoundSpec {
  Family family;
  Direction direction;
  AInterval valid_a;
  bool exact_at_zero;
  bool exact_at_infinity;
  // Set only for forwardShifted / backwardShifted.
  std::optional<Family> base;
  int shift = 0;

  /// Short identifier, e.g. "G", "g_lo", "fwd3(g)".
  std::string name() const;
};

/// Table rows for `f`, one per range of a with a fixed direction.
std::vector<BoundSpec> spec_rows(Family f);

/// The row of `f` whose range contains `a`, if any. Integer a for the tamed
/// families yields Direction::Exact (the shift of an exact bound is exact).
std::optional<BoundSpec> lookup_spec(Family f, double a);

/// Direction of a k-shifted bound from the sign of its falling-factorial
/// coefficient: (a-1)_k for forward shifts, (a-1+k)_k for backward ones.
/// A positive coefficient keeps the direction, a negative one flips it.
Direction shifted_direction(Direction base, double coefficient);

/// Spec of the forward (k > 0 shifts from a-k) or backward shift of `base`
/// evaluated at parameter a.
BoundSpec shifted_spec(const BoundSpec& base, double a, int k, bool forward);

/// The union of the validity intervals of all rows of `f`.
std::vector<AInterval> validity(Family f);

}  // namespace igbounds
