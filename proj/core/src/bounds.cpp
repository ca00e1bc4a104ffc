#include "igbounds/bounds.hpp"

namespace igbounds {

std::string_view region_name(RegionTag tag) {
  switch (tag) {
    case RegionTag::BelowMinusOne: return "BelowMinusOne";
    case RegionTag::MinusOneToOne: return "MinusOneToOne";
    case RegionTag::ExactOne: return "ExactOne";
    case RegionTag::OneToTwo: return "OneToTwo";
    case RegionTag::ExactTwo: return "ExactTwo";
    case RegionTag::TwoToThree: return "TwoToThree";
    case RegionTag::ExactThree: return "ExactThree";
    case RegionTag::ThreeUp: return "ThreeUp";
  }
  return "?";
}

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::Plain: return "plain";
    case Mode::Tamed: return "tamed";
    case Mode::TamedAlt: return "tamed-alt";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "plain") return Mode::Plain;
  if (s == "tamed") return Mode::Tamed;
  if (s == "tamed-alt") return Mode::TamedAlt;
  return std::nullopt;
}

const std::vector<DispatchRow>& dispatch_table() {
  static const std::vector<DispatchRow> rows = {
      {"a < -2 (and a = -2)", "any", "g_lo", "g_shift1_lo"},
      {"-2 < a < -1", "any", "max(g_lo, h_lower)", "g_shift1_lo"},
      {"-1 <= a < 0", "any", "h_lower", "min(G, g_shift1_lo)"},
      {"0 <= a < 1", "any", "h_lower", "G"},
      {"a = 1", "any", "e^-x (exact)", "e^-x (exact)"},
      {"1 < a < 2", "any", "G", "G_fwd1"},
      {"a = 2", "any", "e^-x (1+x) (exact)", "e^-x (1+x) (exact)"},
      {"2 < a < 3", "any", "G_fwd1", "g"},
      {"a = 3", "any", "e^-x (2+2x+x^2) (exact)", "e^-x (2+2x+x^2) (exact)"},
      {"a > 3", "plain", "g", "G"},
      {"a > 3", "tamed", "tamed_lower = fwd(ceil(a)-2)(G)", "tamed_upper = fwd(ceil(a)-3)(g)"},
      {"3 < a <= 4", "tamed-alt", "g", "G"},
      {"a > 4", "tamed-alt", "fwd(ceil(a)-4)(g)", "fwd(ceil(a)-4)(G)"},
  };
  return rows;
}

std::size_t dispatch_row(double a, Mode mode) {
  if (a <= -2) return 0;
  if (a < -1) return 1;
  if (a < 0) return 2;
  if (a < 1) return 3;
  if (a == 1) return 4;
  if (a < 2) return 5;
  if (a == 2) return 6;
  if (a < 3) return 7;
  if (a == 3) return 8;
  switch (mode) {
    case Mode::Plain: return 9;
    case Mode::Tamed: return 10;
    case Mode::TamedAlt: return a > 4 ? 12 : 11;
  }
  return 9;
}

namespace detail {

BoundSpec spec_at(Family f, double a) {
  if (auto s = lookup_spec(f, a)) return *s;
  throw std::domain_error("no bound spec for " + std::string(family_name(f)) + " at a = " + format_real(a));
}

BoundSpec exact_closed_form_spec(double a) {
  // g_a is exact at each of a = 1, 2, 3.
  return spec_at(Family::g, a);
}

}  // namespace detail
}  // namespace igbounds
