#pragma once

// Signed errors of the bounds against the reference evaluator, the grid
// verification driver, and numerical checks of the quantitative statements:
// the closed-form maximum of g_hi/g_lo, explosion of the unshifted bounds,
// taming by forward shifts, boundedness, and the Gautschi substitution.
//
// Everything here evaluates in binary128 (`quad`): several bounds sit within
// 1e-15 of Γ(a,x) on the standard grid, closer than double can resolve.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "igbounds/bounds.hpp"
#include "igbounds/oracle.hpp"

namespace igbounds {

// ---------------------------------------------------------------------------
// Grids

std::vector<double> log_points(double lo, double hi, int count);
std::vector<double> linear_points(double lo, double hi, int count);

/// a in [-10, 10] with step 0.25, minus 1e-6 windows around -1, 0, 1, 2, 3.
std::vector<double> standard_a_values();
/// 25 log-spaced points in [1e-6, 1e3].
std::vector<double> standard_x_values();
/// 200 log-spaced points in [1e-3, 1e2].
std::vector<double> figure_x_values();
/// The ten parameter values plotted in the reference figure.
std::vector<double> figure_a_values();

inline constexpr double kBoundaryWindow = 1e-6;

struct GridSpec {
  std::vector<double> a;
  std::vector<double> x;

  static GridSpec standard() { return {standard_a_values(), standard_x_values()}; }
  std::size_t size() const { return a.size() * x.size(); }
};

/// Reference values over a grid, row-major in (a, x).
struct OracleGrid {
  GridSpec grid;
  std::vector<OracleResult<quad>> values;

  const OracleResult<quad>& at(std::size_t ia, std::size_t ix) const {
    return values[ia * grid.x.size() + ix];
  }
};

/// Evaluates igamma_ref at every cell, in parallel when `threads` > 1.
OracleGrid evaluate_oracle_grid(const GridSpec& grid, OracleMode mode = OracleMode::Verify,
                                unsigned threads = 1);

// ---------------------------------------------------------------------------
// Families and error records

/// Every family defined at `a`, in name order. Above a = 4 this includes the
/// forward (ceil(a)-4)-shifts of g and G.
std::vector<BoundSpec> applicable_specs(double a);

/// simple_hi needs x > a - 1; every other family is defined for all x > 0.
bool defined_at(const BoundSpec& spec, double a, double x);

/// Evaluates the family described by `spec` (including generic shifts).
ExpScaled<quad> evaluate_spec(const BoundSpec& spec, quad a, quad x);

struct ErrorRecord {
  double a;
  double x;
  std::string bound_name;
  Direction direction;
  quad bound_value;
  quad oracle_value;
  quad delta;       // bound - oracle
  double delta_rel;  // delta / oracle
  double oracle_rel_err;
  bool violation;  // sign contradicts direction by more than the tolerance
};

/// Tolerance factor applied to the oracle's relative error.
inline constexpr double kMarginFactor = 10;
/// Equalities pass within this relative error.
inline constexpr double kEqualityTolerance = 1e-10;

/// Whether δ agrees with `d`. Strict checks need |δ| > 10·err on the right
/// side; non-strict ones tolerate 10·err on the wrong side.
bool direction_holds(Direction d, double delta_rel, double oracle_rel_err, bool strict);

ErrorRecord make_record(const BoundSpec& spec, double a, double x, const ExpScaled<quad>& bound,
                        const OracleResult<quad>& oracle);

/// Error record of `spec` at (a, x) against igamma_ref in verification mode.
ErrorRecord rel_error(const BoundSpec& spec, double a, double x);

// ---------------------------------------------------------------------------
// Verification

struct Violation {
  double a;
  double x;
  std::string bound;
  std::string relation;
  double margin;  // signed relative gap; negative or too small means failure
  double oracle_err;
};

struct ViolationReport {
  std::vector<Violation> items;
  std::size_t checks = 0;

  bool empty() const { return items.empty(); }
};

/// Optional test hook applied to every family value before it is checked.
using BoundTamper = std::function<ExpScaled<quad>(const BoundSpec&, double a, ExpScaled<quad>)>;

/// Checks on every cell: each applicable family against its direction, the
/// bracket from `mode`, and the pairwise orderings between g, G, g_lo, g_hi
/// and g_shift1_lo.
ViolationReport verify_all(const OracleGrid& oracle, Mode mode, const BoundTamper& tamper = {});
ViolationReport verify_all(const GridSpec& grid, Mode mode, const BoundTamper& tamper = {});

std::string format_violation(const Violation& v);

/// Error records of every applicable family over a × x, ordered by
/// (a, x, bound name).
std::vector<ErrorRecord> figure_data(const std::vector<double>& a_list,
                                     const std::vector<double>& x_grid);

// ---------------------------------------------------------------------------
// Quantitative checks

struct MaxRatio {
  double argmax;
  double max_ratio;
};

/// Maximizes g_hi/g_lo = ((x-a)^2+a)/((x-a-1)(x-a)) over x > 0 by golden
/// section in binary128. Requires a < -1.
MaxRatio max_ratio_brackets(double a);
/// sqrt(a(a+1)) and 2/(1+sqrt(1+1/a)).
MaxRatio max_ratio_closed_form(double a);

struct ExplosionRow {
  double a;
  double ratio_G;  // G_a(a) / Γ(a,a)
  double ratio_g;  // Γ(a,a-1) / g_a(a-1)
};

std::vector<ExplosionRow> explosion_probe(const std::vector<double>& a_list);

struct TamingRow {
  double a;
  int k;
  double x;
  double base_lower;   // δ of g at a-k
  double shift_lower;  // δ of the k-shift of g at a
  double shift_upper;  // δ of the k-shift of G at a
  double base_upper;   // δ of G at a-k
  double tolerance;
};

/// δ values for the four bounds in the shift-by-(ceil(a)-4) chain.
std::vector<TamingRow> taming_chain(double a, const std::vector<double>& x_grid);
bool chain_holds(const TamingRow& r);

struct BoundednessReport {
  double a_star;
  double min_dG;
  double max_dG;
  double min_dg;
  double max_dg;
  double cap_G;  // envelope from the mean value theorem, see analysis.cpp
  double cap_g;
  double floor;  // min δ must exceed this

  bool ok() const { return min_dG > floor && min_dg > floor && max_dG < cap_G && max_dg < cap_g; }
};

/// Extremes of δ of G over a in [1, a_star] and of g over [2, a_star]
/// (a stepped by 0.25) times `x_grid`.
BoundednessReport boundedness_probe(double a_star, const std::vector<double>& x_grid);

/// c((v^p + 1/c)^{1/p} - v), evaluated without cancellation.
quad gautschi_H(quad p, quad c, quad v);
/// Γ(1 + 1/p)^{p/(p-1)}.
quad gautschi_c(quad p);

struct GautschiReport {
  double p;
  double v;
  double identity_residual;  // |H(p,c_p,v) - a e^x G_a(x)| / (a e^x G_a(x))
  double lower_gap;          // (target - H(p,1/2,v)) / target, > 0 when it holds
  double upper_gap;          // (H(p,c_p,v) - target) / target, >= 0 when it holds
  double oracle_rel_err;

  bool sandwich_holds() const;
};

/// a = 1/p, x = v^p, target = e^x a Γ(a,x). Requires p > 1, v > 0.
GautschiReport gautschi_check(double p, double v);

}  // namespace igbounds
