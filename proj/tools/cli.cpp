#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "igbounds/analysis.hpp"

namespace igbounds::cli {
namespace {

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GridOptions {
  std::vector<double> a;
  std::vector<double> x;
  double xmin;
  double xmax;
  int count;
  std::string scale = "log";
};

struct OutputOptions {
  std::string path;
  std::string format = "csv";
};

void add_grid_options(CLI::App& cmd, GridOptions& g, const char* a_help) {
  cmd.add_option("-a,--a", g.a, a_help)->delimiter(',');
  cmd.add_option("-x,--x", g.x, "Explicit x values (comma separated); overrides the x grid")->delimiter(',');
  cmd.add_option("--xmin", g.xmin, "Smallest x of the grid")->capture_default_str();
  cmd.add_option("--xmax", g.xmax, "Largest x of the grid")->capture_default_str();
  cmd.add_option("--count", g.count, "Number of x grid points")->capture_default_str();
  cmd.add_option("--scale", g.scale, "Grid spacing: log or linear")->capture_default_str();
}

void add_output_options(CLI::App& cmd, OutputOptions& o) {
  cmd.add_option("-o,--output", o.path, "Write to this file instead of standard output");
  cmd.add_option("--format", o.format, "csv or tsv")->capture_default_str();
}

Mode parse_mode_or_throw(const std::string& s) {
  if (auto m = parse_mode(s)) return *m;
  throw InvalidInput("unknown mode '" + s + "' (expected plain, tamed or tamed-alt)");
}

std::vector<double> resolve_x(const GridOptions& g) {
  if (!g.x.empty()) {
    for (double x : g.x)
      if (!(x > 0) || !std::isfinite(x)) throw InvalidInput("x values must be finite and > 0");
    return g.x;
  }
  if (g.count < 2) throw InvalidInput("grid count must be >= 2");
  if (!(g.xmin > 0)) throw InvalidInput("grid minimum must be > 0");
  if (!(g.xmin < g.xmax) || !std::isfinite(g.xmax)) throw InvalidInput("grid minimum must be < maximum");
  if (g.scale == "log") return log_points(g.xmin, g.xmax, g.count);
  if (g.scale == "linear") return linear_points(g.xmin, g.xmax, g.count);
  throw InvalidInput("unknown grid scale '" + g.scale + "' (expected log or linear)");
}

std::vector<double> resolve_a(const GridOptions& g) {
  if (g.a.empty()) throw InvalidInput("the a list is empty");
  for (double a : g.a)
    if (!std::isfinite(a)) throw InvalidInput("a values must be finite");
  return g.a;
}

char separator(const OutputOptions& o) {
  if (o.format == "csv") return ',';
  if (o.format == "tsv") return '\t';
  throw InvalidInput("unknown format '" + o.format + "' (expected csv or tsv)");
}

// Runs `body` against the requested destination.
void with_output(const OutputOptions& o, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (o.path.empty()) {
    body(out);
    return;
  }
  std::ofstream file(o.path);
  if (!file) throw InvalidInput("cannot open output file '" + o.path + "'");
  body(file);
}

void write_records(std::ostream& os, char sep, const std::vector<ErrorRecord>& rows) {
  os << "a" << sep << "x" << sep << "bound" << sep << "direction" << sep << "value" << sep << "oracle" << sep
     << "delta" << sep << "delta_rel" << '\n';
  for (const auto& r : rows) {
    os << format_real(r.a) << sep << format_real(r.x) << sep << r.bound_name << sep << direction_name(r.direction)
       << sep << format_real(r.bound_value) << sep << format_real(r.oracle_value) << sep << format_real(r.delta)
       << sep << format_real(r.delta_rel) << '\n';
  }
}

// The two sides of the dispatched bracket at every cell, ordered by
// (a, x, bound name). Exact cases report their single family once.
std::vector<ErrorRecord> bracket_records(std::vector<double> as, std::vector<double> xs, Mode mode) {
  std::sort(as.begin(), as.end());
  as.erase(std::unique(as.begin(), as.end()), as.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<ErrorRecord> out;
  for (double a : as) {
    for (double x : xs) {
      const auto ref = igamma_ref<quad>(a, x, OracleMode::Verify);
      const auto br = bracket<quad>(a, x, mode);
      auto lo = make_record(br.lower_spec, a, x, br.lower, ref);
      auto hi = make_record(br.upper_spec, a, x, br.upper, ref);
      if (hi.bound_name < lo.bound_name) std::swap(lo, hi);
      out.push_back(lo);
      if (hi.bound_name != lo.bound_name) out.push_back(hi);
    }
  }
  return out;
}

int cmd_eval(double a, double x, const std::string& mode_text, bool explain, std::ostream& out) {
  const Mode mode = parse_mode_or_throw(mode_text);
  if (!std::isfinite(a)) throw InvalidInput("a must be finite");
  if (!(x > 0) || !std::isfinite(x)) throw InvalidInput("x must be finite and > 0");
  const auto br = bracket<quad>(a, x, mode);
  const auto ref = igamma_ref<quad>(a, x, OracleMode::Verify);
  out << "a = " << format_real(a) << '\n';
  out << "x = " << format_real(x) << '\n';
  out << "mode = " << mode_name(mode) << '\n';
  out << "lower = " << format_real(br.lower.value()) << " (" << br.lower_spec.name() << ")\n";
  out << "upper = " << format_real(br.upper.value()) << " (" << br.upper_spec.name() << ")\n";
  out << "oracle = " << format_real(ref.value()) << " (" << method_name(ref.method)
      << ", rel_err " << format_real(ref.rel_err, 3) << ")\n";
  out << "delta_lower = " << format_real(br.lower.scaled / ref.scaled - 1) << '\n';
  out << "delta_upper = " << format_real(br.upper.scaled / ref.scaled - 1) << '\n';
  if (explain) {
    const std::size_t used = dispatch_row(a, mode);
    out << "region = " << region_name(classify(a).tag) << '\n';
    out << "dispatch table (* marks the row used):\n";
    const auto& rows = dispatch_table();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << (i == used ? "  * " : "    ") << rows[i].region << " | mode " << rows[i].mode << " | lower "
          << rows[i].lower << " | upper " << rows[i].upper << '\n';
    }
  }
  return kOk;
}

std::optional<BoundTamper> fault_fixture() {
#ifdef IGBOUNDS_CLI_FAULT_FIXTURE
  // Negative control: halve G at a = 0.5 so that it drops below Γ(a,x).
  return BoundTamper([](const BoundSpec& spec, double a, ExpScaled<quad> v) {
    if (spec.family == Family::G && a == 0.5) v.scaled /= 2;
    return v;
  });
#else
  return std::nullopt;
#endif
}

int cmd_verify(const GridOptions& g, const std::string& mode_text, unsigned threads, const OutputOptions& o,
               std::ostream& out) {
  const Mode mode = parse_mode_or_throw(mode_text);
  GridSpec grid{resolve_a(g), resolve_x(g)};
  const auto oracle = evaluate_oracle_grid(grid, OracleMode::Verify, std::max(1u, threads));
  const auto tamper = fault_fixture();
  const auto report = verify_all(oracle, mode, tamper.value_or(BoundTamper{}));
  with_output(o, out, [&](std::ostream& os) {
    for (const auto& v : report.items) os << format_violation(v) << '\n';
    os << "checked " << report.checks << " relations on " << grid.a.size() << " x " << grid.x.size()
       << " cells (mode " << mode_name(mode) << "): " << report.items.size() << " violations\n";
  });
  return report.empty() ? kOk : kViolations;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified bounds on the upper incomplete gamma function Γ(a,x)", "igbounds"};
  app.require_subcommand(1);

  double eval_a = 0;
  double eval_x = 0;
  std::string mode = "plain";
  bool explain = false;
  auto* eval = app.add_subcommand("eval", "Bracket, reference value and relative errors at one point");
  eval->add_option("-a,--a", eval_a, "Parameter a (any finite real)")->required();
  eval->add_option("-x,--x", eval_x, "Argument x > 0")->required();
  eval->add_option("--mode", mode, "plain, tamed or tamed-alt")->capture_default_str();
  eval->add_flag("--explain", explain, "Also print the dispatch table and the row used");

  GridOptions table_grid{standard_a_values(), {}, 1e-6, 1e3, 25};
  OutputOptions table_out;
  std::string rows = "all";
  auto* table = app.add_subcommand("table", "Signed relative errors over a grid as CSV");
  add_grid_options(*table, table_grid, "Parameter values (comma separated); default: the standard a grid");
  add_output_options(*table, table_out);
  table->add_option("--rows", rows, "all: every applicable family; bracket: the dispatched pair")
      ->capture_default_str();
  table->add_option("--mode", mode, "Bracket selection for --rows bracket")->capture_default_str();

  GridOptions verify_grid{standard_a_values(), {}, 1e-6, 1e3, 25};
  OutputOptions verify_out;
  unsigned threads = 1;
  auto* verify = app.add_subcommand("verify", "Check every inequality on a grid; exit 1 on violations");
  add_grid_options(*verify, verify_grid, "Parameter values (comma separated); default: the standard a grid");
  add_output_options(*verify, verify_out);
  verify->add_option("--mode", mode, "plain, tamed or tamed-alt")->capture_default_str();
  verify->add_option("--threads", threads, "Worker threads for reference values")->capture_default_str();

  GridOptions figure_grid{figure_a_values(), {}, 1e-3, 1e2, 200};
  OutputOptions figure_out;
  auto* figure = app.add_subcommand(
      "figure", "Signed relative error curves of every applicable family (CSV with an a column)");
  add_grid_options(*figure, figure_grid, "Parameter values; default: the ten values of the reference figure");
  add_output_options(*figure, figure_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*eval) return cmd_eval(eval_a, eval_x, mode, explain, out);
    if (*table) {
      const char sep = separator(table_out);
      const auto as = resolve_a(table_grid);
      const auto xs = resolve_x(table_grid);
      std::vector<ErrorRecord> records;
      if (rows == "all")
        records = figure_data(as, xs);
      else if (rows == "bracket")
        records = bracket_records(as, xs, parse_mode_or_throw(mode));
      else
        throw InvalidInput("unknown --rows value '" + rows + "' (expected all or bracket)");
      with_output(table_out, out, [&](std::ostream& os) { write_records(os, sep, records); });
      return kOk;
    }
    if (*verify) {
      separator(verify_out);
      return cmd_verify(verify_grid, mode, threads, verify_out, out);
    }
    if (*figure) {
      const char sep = separator(figure_out);
      const auto records = figure_data(resolve_a(figure_grid), resolve_x(figure_grid));
      with_output(figure_out, out, [&](std::ostream& os) { write_records(os, sep, records); });
      return kOk;
    }
  } catch (const OracleFailure& e) {
    err << "oracle failure: " << e.what() << '\n';
    return kOracleFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace igbounds::cli
