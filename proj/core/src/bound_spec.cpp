#include "igbounds/bound_spec.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "igbounds/real.hpp"

namespace igbounds {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Row {
  Family family;
  AInterval range;
  Direction direction;
  bool exact_at_zero;
  bool exact_at_infinity;
};

AInterval open(double lo, double hi) { return {lo, hi, false, false}; }
AInterval closed_open(double lo, double hi) { return {lo, hi, true, false}; }
AInterval point(double v) { return {v, v, true, true}; }

using D = Direction;
using F = Family;

// Directions and exactness as stated for each family. G is exact at x = 0
// only for a >= 0; at x = ∞ it is exact for every a >= -1.
const std::array kRows = {
    Row{F::G, closed_open(-1, 0), D::Upper, false, true},
    Row{F::G, closed_open(0, 1), D::Upper, true, true},
    Row{F::G, point(1), D::Exact, true, true},
    Row{F::G, open(1, 2), D::Lower, true, true},
    Row{F::G, point(2), D::Exact, true, true},
    Row{F::G, open(2, kInf), D::Upper, true, true},

    Row{F::g, point(1), D::Exact, true, true},
    Row{F::g, open(1, 2), D::Lower, true, true},
    Row{F::g, point(2), D::Exact, true, true},
    Row{F::g, open(2, 3), D::Upper, true, true},
    Row{F::g, point(3), D::Exact, true, true},
    Row{F::g, open(3, kInf), D::Lower, true, true},

    Row{F::gLo, open(-kInf, -1), D::Lower, true, true},
    Row{F::gHi, open(-kInf, 0), D::Upper, true, true},
    Row{F::gShift2Lo, open(-kInf, 1), D::Lower, false, true},
    Row{F::GBack1, open(-2, 1), D::Lower, true, false},

    Row{F::GFwd1, open(1, 2), D::Upper, true, true},
    Row{F::GFwd1, point(2), D::Exact, true, true},
    Row{F::GFwd1, open(2, 3), D::Lower, true, true},

    Row{F::gShift1Lo, open(-kInf, 0), D::Upper, true, true},
    Row{F::hMax, open(-2, 1), D::Lower, true, true},

    Row{F::simpleLo, point(1), D::Exact, true, true},
    Row{F::simpleLo, open(1, kInf), D::Lower, false, true},
    Row{F::simpleHi, point(1), D::Exact, true, true},
    Row{F::simpleHi, open(1, kInf), D::Upper, false, true},

    Row{F::tamedLower, open(2, kInf), D::Lower, true, true},
    Row{F::tamedUpper, open(3, kInf), D::Upper, true, true},
};

BoundSpec to_spec(const Row& r) {
  return BoundSpec{r.family, r.direction, r.range, r.exact_at_zero, r.exact_at_infinity, std::nullopt, 0};
}

std::string format_bound(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case F::G: return "G";
    case F::g: return "g";
    case F::gLo: return "g_lo";
    case F::gHi: return "g_hi";
    case F::gShift2Lo: return "g_shift2_lo";
    case F::GBack1: return "G_back1";
    case F::GFwd1: return "G_fwd1";
    case F::gShift1Lo: return "g_shift1_lo";
    case F::hMax: return "h_lower";
    case F::simpleLo: return "simple_lo";
    case F::simpleHi: return "simple_hi";
    case F::tamedLower: return "tamed_lower";
    case F::tamedUpper: return "tamed_upper";
    case F::forwardShifted: return "fwd";
    case F::backwardShifted: return "bwd";
  }
  return "?";
}

std::string_view direction_name(Direction d) {
  switch (d) {
    case D::Lower: return "Lower";
    case D::Upper: return "Upper";
    case D::Exact: return "Exact";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(F::backwardShifted); ++i) {
    const auto f = static_cast<Family>(i);
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

std::string AInterval::describe() const {
  if (is_point()) return "{" + format_bound(lo) + "}";
  return std::string(lo_closed ? "[" : "(") + format_bound(lo) + ", " + format_bound(hi) +
         (hi_closed ? "]" : ")");
}

std::string BoundSpec::name() const {
  if (family == F::forwardShifted || family == F::backwardShifted) {
    std::string n = family == F::forwardShifted ? "fwd" : "bwd";
    n += std::to_string(shift);
    n += "(";
    n += base ? family_name(*base) : "?";
    n += ")";
    return n;
  }
  return std::string(family_name(family));
}

std::vector<BoundSpec> spec_rows(Family f) {
  std::vector<BoundSpec> out;
  for (const auto& r : kRows)
    if (r.family == f) out.push_back(to_spec(r));
  return out;
}

std::optional<BoundSpec> lookup_spec(Family f, double a) {
  for (const auto& r : kRows) {
    if (r.family != f || !r.range.contains(a)) continue;
    BoundSpec s = to_spec(r);
    if ((f == F::tamedLower || f == F::tamedUpper) && a == std::floor(a)) s.direction = D::Exact;
    return s;
  }
  return std::nullopt;
}

Direction shifted_direction(Direction base, double coefficient) {
  if (base == D::Exact || coefficient >= 0) return base;
  return base == D::Lower ? D::Upper : D::Lower;
}

BoundSpec shifted_spec(const BoundSpec& base, double a, int k, bool forward) {
  double coefficient = 1;
  const double top = forward ? a - 1 : a - 1 + k;
  for (int i = 0; i < k; ++i) coefficient *= top - i;
  BoundSpec s = base;
  s.family = forward ? F::forwardShifted : F::backwardShifted;
  s.base = base.family;
  s.shift = k;
  s.direction = shifted_direction(base.direction, coefficient);
  s.valid_a = forward ? AInterval{base.valid_a.lo + k, base.valid_a.hi + k, base.valid_a.lo_closed,
                                  base.valid_a.hi_closed}
                      : AInterval{base.valid_a.lo - k, base.valid_a.hi - k, base.valid_a.lo_closed,
                                  base.valid_a.hi_closed};
  return s;
}

std::vector<AInterval> validity(Family f) {
  std::vector<AInterval> out;
  for (const auto& r : kRows) {
    if (r.family != f) continue;
    if (!out.empty() && out.back().hi == r.range.lo && (out.back().hi_closed || r.range.lo_closed)) {
      out.back().hi = r.range.hi;
      out.back().hi_closed = r.range.hi_closed;
    } else {
      out.push_back(r.range);
    }
  }
  return out;
}

}  // namespace igbounds
