#include "igbounds/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

namespace igbounds {
namespace {

constexpr double kBoundaryPoints[] = {-1, 0, 1, 2, 3};

bool near_boundary(double a) {
  return std::any_of(std::begin(kBoundaryPoints), std::end(kBoundaryPoints),
                     [a](double p) { return std::abs(a - p) <= kBoundaryWindow; });
}

// Bound-to-bound orderings do not involve the oracle; their gap only has to
// clear binary128 rounding.
const quad kOrderingFloor = 64 * epsilon<quad>();

std::string relation_for(Direction d) {
  switch (d) {
    case Direction::Lower: return "<Gamma";
    case Direction::Upper: return ">Gamma";
    case Direction::Exact: return "=Gamma";
  }
  return "?";
}

double signed_margin(Direction d, double delta_rel) {
  switch (d) {
    case Direction::Lower: return -delta_rel;
    case Direction::Upper: return delta_rel;
    case Direction::Exact: return -std::abs(delta_rel);
  }
  return 0;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<double> log_points(double lo, double hi, int count) {
  detail::require(lo > 0 && hi > lo && count >= 2, "log_points: need 0 < lo < hi and count >= 2");
  std::vector<double> out(count);
  const double l0 = std::log10(lo);
  const double step = (std::log10(hi) - l0) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = std::pow(10.0, l0 + step * i);
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> linear_points(double lo, double hi, int count) {
  detail::require(hi > lo && count >= 2, "linear_points: need lo < hi and count >= 2");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
  return out;
}

std::vector<double> standard_a_values() {
  std::vector<double> out;
  for (int i = -40; i <= 40; ++i) {
    const double a = 0.25 * i;
    if (!near_boundary(a)) out.push_back(a);
  }
  return out;
}

std::vector<double> standard_x_values() { return log_points(1e-6, 1e3, 25); }
std::vector<double> figure_x_values() { return log_points(1e-3, 1e2, 200); }
std::vector<double> figure_a_values() { return {-7.5, -2.5, -1.5, -0.5, 0, 0.5, 1.5, 2.5, 3.5, 7.5}; }

OracleGrid evaluate_oracle_grid(const GridSpec& grid, OracleMode mode, unsigned threads) {
  OracleGrid out{grid, std::vector<OracleResult<quad>>(grid.size())};
  const std::size_t nx = grid.x.size();
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < out.values.size(); i += step)
      out.values[i] = igamma_ref<quad>(grid.a[i / nx], grid.x[i % nx], mode);
  };
  if (threads <= 1) {
    work(0, 1);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        work(t, threads);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<BoundSpec> applicable_specs(double a) {
  std::vector<BoundSpec> out;
  for (int i = 0; i < static_cast<int>(Family::forwardShifted); ++i)
    if (auto s = lookup_spec(static_cast<Family>(i), a)) out.push_back(*s);
  if (a > 4) {
    const int k = taming_shift(a, 4);
    out.push_back(shifted_spec(detail::spec_at(Family::g, a - k), a, k, true));
    out.push_back(shifted_spec(detail::spec_at(Family::G, a - k), a, k, true));
  }
  std::sort(out.begin(), out.end(), [](const BoundSpec& p, const BoundSpec& q) { return p.name() < q.name(); });
  return out;
}

bool defined_at(const BoundSpec& spec, double a, double x) {
  return spec.family != Family::simpleHi || x > a - 1;
}

ExpScaled<quad> evaluate_spec(const BoundSpec& spec, quad a, quad x) {
  if (spec.family == Family::forwardShifted || spec.family == Family::backwardShifted) {
    detail::require(spec.base.has_value(), "evaluate_spec: shifted spec without a base");
    const auto base = as_bound_fn<quad>(*spec.base);
    return spec.family == Family::forwardShifted ? forward_shift(base, a, spec.shift, x)
                                                 : backward_shift(base, a, spec.shift, x);
  }
  return evaluate(spec.family, a, x);
}

bool direction_holds(Direction d, double delta_rel, double oracle_rel_err, bool strict) {
  const double tol = kMarginFactor * oracle_rel_err;
  switch (d) {
    case Direction::Lower: return strict ? delta_rel < -tol : delta_rel <= tol;
    case Direction::Upper: return strict ? delta_rel > tol : delta_rel >= -tol;
    case Direction::Exact: return std::abs(delta_rel) <= std::max(kEqualityTolerance, tol);
  }
  return false;
}

ErrorRecord make_record(const BoundSpec& spec, double a, double x, const ExpScaled<quad>& bound,
                        const OracleResult<quad>& oracle) {
  ErrorRecord r;
  r.a = a;
  r.x = x;
  r.bound_name = spec.name();
  r.direction = spec.direction;
  r.bound_value = bound.value();
  r.oracle_value = oracle.value();
  r.delta = r.bound_value - r.oracle_value;
  r.delta_rel = to_double(bound.scaled / oracle.scaled - 1);
  r.oracle_rel_err = to_double(oracle.rel_err);
  r.violation = !direction_holds(spec.direction, r.delta_rel, r.oracle_rel_err, false);
  return r;
}

ErrorRecord rel_error(const BoundSpec& spec, double a, double x) {
  detail::require(spec.valid_a.contains(a), "rel_error: spec is not valid at a");
  detail::require_positive(x, "rel_error: x must be > 0");
  const auto oracle = igamma_ref<quad>(a, x, OracleMode::Verify);
  return make_record(spec, a, x, evaluate_spec(spec, a, x), oracle);
}

ViolationReport verify_all(const OracleGrid& oracle, Mode mode, const BoundTamper& tamper) {
  ViolationReport report;
  const auto& grid = oracle.grid;
  auto flag = [&](double a, double x, std::string bound, std::string relation, double margin, double err) {
    report.items.push_back({a, x, std::move(bound), std::move(relation), margin, err});
  };
  for (std::size_t ia = 0; ia < grid.a.size(); ++ia) {
    const double a = grid.a[ia];
    const auto specs = applicable_specs(a);
    for (std::size_t ix = 0; ix < grid.x.size(); ++ix) {
      const double x = grid.x[ix];
      const auto& ref = oracle.at(ia, ix);
      const double err = to_double(ref.rel_err);
      auto delta_of = [&](const ExpScaled<quad>& v) { return to_double(v.scaled / ref.scaled - 1); };

      // Each family on its own side of Γ(a,x).
      std::optional<quad> G, g, glo, ghi, gs1;
      for (const auto& spec : specs) {
        if (!defined_at(spec, a, x)) continue;
        auto v = evaluate_spec(spec, a, x);
        if (tamper) v = tamper(spec, a, v);
        const double d = delta_of(v);
        ++report.checks;
        if (!direction_holds(spec.direction, d, err, spec.direction != Direction::Exact))
          flag(a, x, spec.name(), spec.name() + relation_for(spec.direction), signed_margin(spec.direction, d),
               err);
        switch (spec.family) {
          case Family::G: G = v.scaled; break;
          case Family::g: g = v.scaled; break;
          case Family::gLo: glo = v.scaled; break;
          case Family::gHi: ghi = v.scaled; break;
          case Family::gShift1Lo: gs1 = v.scaled; break;
          default: break;
        }
      }

      // The dispatched bracket.
      const auto br = bracket<quad>(a, x, mode);
      for (const bool lower : {true, false}) {
        const auto& spec = lower ? br.lower_spec : br.upper_spec;
        const double d = delta_of(lower ? br.lower : br.upper);
        const Direction want = spec.direction == Direction::Exact ? Direction::Exact
                               : lower                            ? Direction::Lower
                                                                  : Direction::Upper;
        ++report.checks;
        if (!direction_holds(want, d, err, want != Direction::Exact))
          flag(a, x, spec.name(), std::string(lower ? "bracket.lower" : "bracket.upper") + relation_for(want),
               signed_margin(want, d), err);
      }

      // Orderings between bounds.
      auto ordered = [&](const std::optional<quad>& small, const std::optional<quad>& big, const char* name,
                         const char* relation) {
        if (!small || !big) return;
        ++report.checks;
        const quad gap = (*big - *small) / *big;
        if (!(gap > kOrderingFloor)) flag(a, x, name, relation, to_double(gap), err);
      };
      if (a > 1 && a < 3) ordered(g, G, "g", "g<G");
      if (a > 3) ordered(g, G, "g", "g<G");
      if (a < -1) ordered(glo, ghi, "g_lo", "g_lo<g_hi");
      if (a < 0) ordered(gs1, ghi, "g_shift1_lo", "g_shift1_lo<g_hi");
    }
  }
  return report;
}

ViolationReport verify_all(const GridSpec& grid, Mode mode, const BoundTamper& tamper) {
  detail::require(!grid.a.empty() && !grid.x.empty(), "verify_all: empty grid");
  return verify_all(evaluate_oracle_grid(grid), mode, tamper);
}

std::string format_violation(const Violation& v) {
  std::ostringstream os;
  os << "VIOLATION a=" << format_real(v.a) << " x=" << format_real(v.x) << " bound=" << v.bound
     << " relation=" << v.relation << " margin=" << format_real(v.margin, 6)
     << " oracle_err=" << format_real(v.oracle_err, 3);
  return os.str();
}

std::vector<ErrorRecord> figure_data(const std::vector<double>& a_list, const std::vector<double>& x_grid) {
  const auto as = sorted_unique(a_list);
  const auto xs = sorted_unique(x_grid);
  std::vector<ErrorRecord> out;
  for (const double a : as) {
    detail::require(std::isfinite(a), "figure_data: a must be finite");
    const auto specs = applicable_specs(a);
    for (const double x : xs) {
      detail::require_positive(x, "figure_data: x must be > 0");
      const auto ref = igamma_ref<quad>(a, x, OracleMode::Verify);
      for (const auto& spec : specs)
        if (defined_at(spec, a, x)) out.push_back(make_record(spec, a, x, evaluate_spec(spec, a, x), ref));
    }
  }
  return out;
}

MaxRatio max_ratio_brackets(double a) {
  detail::require(a < -1 && std::isfinite(a), "max_ratio_brackets: a must be < -1");
  const quad qa = a;
  const auto ratio = [&](const quad& x) {
    const quad u = x - qa;
    return (u * u + qa) / ((u - 1) * u);
  };
  const quad phi = (sqrt(quad(5)) - 1) / 2;
  quad lo = 1e-6;
  quad hi = 10 * std::abs(a) + 10;
  quad c = hi - phi * (hi - lo);
  quad d = lo + phi * (hi - lo);
  quad fc = ratio(c);
  quad fd = ratio(d);
  while (hi - lo > quad(1e-12) * (hi + lo) / 2) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - phi * (hi - lo);
      fc = ratio(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + phi * (hi - lo);
      fd = ratio(d);
    }
  }
  const quad best = (lo + hi) / 2;
  return {to_double(best), to_double(ratio(best))};
}

MaxRatio max_ratio_closed_form(double a) {
  detail::require(a < -1, "max_ratio_closed_form: a must be < -1");
  return {std::sqrt(a * (a + 1)), 2 / (1 + std::sqrt(1 + 1 / a))};
}

std::vector<ExplosionRow> explosion_probe(const std::vector<double>& a_list) {
  std::vector<ExplosionRow> out;
  for (const double a : a_list) {
    detail::require(a > 3, "explosion_probe: each a must be > 3");
    const quad qa = a;
    const auto at_a = igamma_ref<quad>(qa, qa, OracleMode::Verify);
    const auto at_a1 = igamma_ref<quad>(qa, qa - 1, OracleMode::Verify);
    out.push_back({a, to_double(G_bound(qa, qa).scaled / at_a.scaled),
                   to_double(at_a1.scaled / g_bound(qa, qa - 1).scaled)});
  }
  return out;
}

std::vector<TamingRow> taming_chain(double a, const std::vector<double>& x_grid) {
  detail::require(a > 4, "taming_chain: a must be > 4");
  const int k = taming_shift(a, 4);
  const quad qa = a;
  const quad base = qa - k;
  const auto g_fn = as_bound_fn<quad>(Family::g);
  const auto G_fn = as_bound_fn<quad>(Family::G);
  std::vector<TamingRow> out;
  for (const double x : x_grid) {
    const quad qx = x;
    const auto ref_a = igamma_ref<quad>(qa, qx, OracleMode::Verify);
    const auto ref_b = igamma_ref<quad>(base, qx, OracleMode::Verify);
    auto d = [](const ExpScaled<quad>& v, const OracleResult<quad>& r) { return to_double(v.scaled / r.scaled - 1); };
    TamingRow row;
    row.a = a;
    row.k = k;
    row.x = x;
    row.base_lower = d(g_bound(base, qx), ref_b);
    row.shift_lower = d(forward_shift(g_fn, qa, k, qx), ref_a);
    row.shift_upper = d(forward_shift(G_fn, qa, k, qx), ref_a);
    row.base_upper = d(G_bound(base, qx), ref_b);
    row.tolerance = kMarginFactor * to_double(std::max(ref_a.rel_err, ref_b.rel_err));
    out.push_back(row);
  }
  return out;
}

bool chain_holds(const TamingRow& r) {
  const double t = r.tolerance;
  return r.base_lower <= r.shift_lower + t && r.shift_lower <= t && -t <= r.shift_upper &&
         r.shift_upper <= r.base_upper + t;
}

// Caps on 1 + δ from the mean value theorem, for 1 <= a <= a*:
//   G_a(x) <= (x + b_a)^{a-1} e^{-x}  and  g_a(x) <= ((x+2)^{a-1} + Γ(a)) e^{-x},
// while Γ(a,x) >= x^{a-1} e^{-x} for x >= a and Γ(a,x) >= a^{a-1} e^{-a}
// for x <= a. Hence 1 + δG <= (1 + b_{a*})^{a*-1} e^{a*} and
// 1 + δg <= ((1 + 2/a)^{a-1} + Γ(a)/a^{a-1}) e^{a}.
BoundednessReport boundedness_probe(double a_star, const std::vector<double>& x_grid) {
  detail::require(a_star >= 2, "boundedness_probe: a_star must be >= 2");
  BoundednessReport r{a_star, 1e300, -1e300, 1e300, -1e300, 0, 0, -0.99};
  const double inf = std::numeric_limits<double>::infinity();
  r.cap_G = std::pow(1 + b_const(a_star), a_star - 1) * std::exp(a_star) - 1;
  double cap_g = 0;
  for (int i = 0; 1 + 0.25 * i <= a_star + 1e-12; ++i) {
    const double a = 1 + 0.25 * i;
    const quad qa = a;
    if (a >= 2) {
      const double env = (std::pow(1 + 2 / a, a - 1) + std::tgamma(a) / std::pow(a, a - 1)) * std::exp(a) - 1;
      cap_g = std::max(cap_g, env);
    }
    for (const double x : x_grid) {
      const auto ref = igamma_ref<quad>(qa, quad(x), OracleMode::Verify);
      const double dG = to_double(G_bound(qa, quad(x)).scaled / ref.scaled - 1);
      r.min_dG = std::min(r.min_dG, dG);
      r.max_dG = std::max(r.max_dG, dG);
      if (a >= 2) {
        const double dg = to_double(g_bound(qa, quad(x)).scaled / ref.scaled - 1);
        r.min_dg = std::min(r.min_dg, dg);
        r.max_dg = std::max(r.max_dg, dg);
      }
    }
  }
  r.cap_g = cap_g > 0 ? cap_g : inf;
  return r;
}

quad gautschi_H(quad p, quad c, quad v) {
  detail::require(p > 1, "gautschi_H: p must be > 1");
  detail::require_positive(c, "gautschi_H: c must be > 0");
  detail::require_positive(v, "gautschi_H: v must be > 0");
  // (v^p + 1/c)^{1/p} - v = v·expm1(log1p(1/(c v^p)) / p)
  return c * v * expm1(log1p(1 / (c * pow(v, p))) / p);
}

quad gautschi_c(quad p) {
  detail::require(p > 1, "gautschi_c: p must be > 1");
  return pow(tgamma(1 + 1 / p), p / (p - 1));
}

bool GautschiReport::sandwich_holds() const {
  const double tol = kMarginFactor * oracle_rel_err;
  return lower_gap > tol && upper_gap >= -tol;
}

GautschiReport gautschi_check(double p, double v) {
  detail::require(p > 1 && std::isfinite(p), "gautschi_check: p must be > 1");
  detail::require_positive(v, "gautschi_check: v must be > 0");
  const quad qp = p;
  const quad qv = v;
  const quad a = 1 / qp;
  const quad x = pow(qv, qp);
  const quad h = gautschi_H(qp, gautschi_c(qp), qv);
  const quad via_G = a * G_bound(a, x).scaled;
  const auto ref = igamma_ref<quad>(a, x, OracleMode::Verify);
  const quad target = a * ref.scaled;
  const quad h_half = gautschi_H(qp, quad(0.5), qv);
  GautschiReport r;
  r.p = p;
  r.v = v;
  r.identity_residual = to_double(abs(h - via_G) / via_G);
  r.lower_gap = to_double((target - h_half) / target);
  r.upper_gap = to_double((h - target) / target);
  r.oracle_rel_err = to_double(ref.rel_err);
  return r;
}

}  // namespace igbounds
