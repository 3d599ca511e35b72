// Command-line front end: point evaluation, sweeps, figure-data
// regeneration, series-vs-oracle verification, and decay fitting.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "horizon/analysis.hpp"
#include "horizon/csv.hpp"
#include "horizon/errors.hpp"
#include "horizon/oracle.hpp"

namespace {

using horizon::analysis::SweepGrid;
using horizon::analysis::SweepRow;
using horizon::unruh::Encoding;
using horizon::unruh::Preparation;
using horizon::unruh::Protocol;
using horizon::unruh::SqueezingParameter;

struct UsageError {
  std::string message;
};

std::vector<Encoding> encodings_from_flag(const std::string& flag) {
  if (flag == "both") {
    return {Encoding::single_rail, Encoding::dual_rail};
  }
  return {horizon::unruh::encoding_from_string(flag)};
}

std::vector<Protocol> protocols_from_flag(const std::string& flag) {
  if (flag == "both") {
    return {Protocol::classical, Protocol::quantum};
  }
  return {horizon::unruh::protocol_from_string(flag)};
}

struct PointFlags {
  double r = 0.0;
  double a = 0.0;
  double mass = 0.0;
  double radius = 0.0;
  double omega = 1.0;
  double alpha_sq = 0.5;
  std::string encoding = "single_rail";
  std::string protocol = "classical";
  bool has_r = false;
  bool has_a = false;
  bool has_mass = false;
  bool has_radius = false;
};

int run_point(const PointFlags& flags) {
  const int sources = (flags.has_r ? 1 : 0) + (flags.has_a ? 1 : 0) +
                      ((flags.has_mass || flags.has_radius) ? 1 : 0);
  if (sources != 1) {
    throw UsageError{
        "specify exactly one of --r, --a, or --mass together with --radius"};
  }
  if ((flags.has_mass || flags.has_radius) &&
      !(flags.has_mass && flags.has_radius)) {
    throw UsageError{"--mass and --radius must be given together"};
  }

  double a = 0.0;
  double r = 0.0;
  if (flags.has_r) {
    r = flags.r;
    SqueezingParameter{r}.validate();
    a = horizon::unruh::acceleration_from_squeezing(SqueezingParameter{r},
                                                    flags.omega)
            .a;
  } else if (flags.has_a) {
    a = flags.a;
    r = horizon::unruh::squeezing_from_acceleration(
            horizon::unruh::AccelerationSpec{a, flags.omega})
            .r;
  } else {
    a = horizon::unruh::acceleration_from_schwarzschild(
            horizon::unruh::SchwarzschildSpec{flags.mass, flags.radius},
            flags.omega)
            .a;
    r = horizon::unruh::squeezing_from_acceleration(
            horizon::unruh::AccelerationSpec{a, flags.omega})
            .r;
  }

  const Encoding enc = horizon::unruh::encoding_from_string(flags.encoding);
  const Protocol proto = horizon::unruh::protocol_from_string(flags.protocol);
  const auto q = horizon::closed_form::derived_quantities(
      Preparation{flags.alpha_sq}, enc, proto, SqueezingParameter{r});

  std::printf("a = %.12f\n", a);
  std::printf("r = %.12f\n", r);
  std::printf("omega = %.12f\n", flags.omega);
  std::printf("alpha_sq = %.12f\n", flags.alpha_sq);
  std::printf("encoding = %s\n", horizon::unruh::to_string(enc).c_str());
  std::printf("protocol = %s\n", horizon::unruh::to_string(proto).c_str());
  std::printf("fidelity = %.12f\n", q.fidelity);
  std::printf("mutual_info_bits = %.12f\n", q.mutual_info_bits);
  std::printf("conditional_entropy_bits = %.12f\n",
              q.conditional_entropy_bits);
  std::printf("capacity_bits = %.12f\n", q.capacity_bits);
  std::printf("coherent_info_bits = %.12f\n", q.coherent_info_bits);
  std::printf("source_entropy_bits = %.12f\n", q.source_entropy_bits);
  return 0;
}

struct SweepFlags {
  std::string axis = "squeezing";
  double start = 0.0;
  double stop = 6.0;
  int points = 200;
  double omega = 1.0;
  double alpha_sq = 0.5;
  std::string encoding = "both";
  std::string protocol = "both";
  std::string out;
};

SweepGrid grid_from_flags(const SweepFlags& flags) {
  SweepGrid grid;
  grid.axis = horizon::analysis::axis_from_string(flags.axis);
  grid.start = flags.start;
  grid.stop = flags.stop;
  grid.points = flags.points;
  grid.omega = flags.omega;
  grid.alpha_sq = flags.alpha_sq;
  grid.encodings = encodings_from_flag(flags.encoding);
  grid.protocols = protocols_from_flag(flags.protocol);
  return grid;
}

int run_sweep(const SweepFlags& flags) {
  const SweepGrid grid = grid_from_flags(flags);
  const std::vector<SweepRow> rows = horizon::analysis::sweep(grid);
  horizon::csv::write_rows(flags.out, rows);
  std::size_t failed = 0;
  for (const SweepRow& row : rows) {
    if (!row.ok()) ++failed;
  }
  std::printf("wrote %s (%zu rows, %zu failed)\n", flags.out.c_str(),
              rows.size(), failed);
  return 0;
}

int run_figures(const std::string& out_dir) {
  const auto started = std::chrono::steady_clock::now();
  SweepGrid grid;  // defaults: r in [0, 6], 200 points, all four channels
  const std::vector<SweepRow> rows = horizon::analysis::sweep(grid);

  std::vector<SweepRow> classical_rows;
  for (const SweepRow& row : rows) {
    if (row.protocol == Protocol::classical) classical_rows.push_back(row);
  }

  const std::string base = out_dir.empty() ? std::string(".") : out_dir;
  const auto path = [&base](const char* name) { return base + "/" + name; };
  horizon::csv::write_rows(path("fig1.csv"), classical_rows);
  horizon::csv::write_rows(path("fig2.csv"), classical_rows);
  horizon::csv::write_rows(path("fig3.csv"), rows);
  horizon::csv::write_rows(path("fig4.csv"), rows);

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  std::printf(
      "wrote %s, %s, %s, %s (%zu grid points, %.2f s)\n",
      path("fig1.csv").c_str(), path("fig2.csv").c_str(),
      path("fig3.csv").c_str(), path("fig4.csv").c_str(),
      rows.size() / 4, elapsed);
  return 0;
}

int run_verify(double tolerance, double r_max) {
  if (!(tolerance > 0.0)) throw UsageError{"--tolerance must be > 0"};
  if (!(r_max >= 0.0)) throw UsageError{"--r-max must be >= 0"};

  const auto grid = horizon::oracle::default_grid();
  std::map<std::string, double> max_series;
  std::map<std::string, double> max_doubling;
  std::size_t checked = 0;
  std::size_t failures = 0;
  for (const auto& point : grid) {
    if (point.r > r_max + 1e-12) continue;
    // Beyond the dense grid the truncation is relaxed, so the spot checks
    // run against a correspondingly relaxed tolerance.
    const double point_tol =
        point.r > 2.5 ? std::max(tolerance, 1e-4) : tolerance;
    const auto report = horizon::oracle::verify_point(
        Preparation{point.alpha_sq}, point.encoding, point.protocol,
        SqueezingParameter{point.r}, point_tol);
    ++checked;
    double worst_series = 0.0;
    double worst_doubling = 0.0;
    for (const auto& [name, delta] : report.series_deltas) {
      max_series[name] = std::max(max_series[name], delta);
      worst_series = std::max(worst_series, delta);
    }
    for (const auto& [name, delta] : report.doubling_deltas) {
      max_doubling[name] = std::max(max_doubling[name], delta);
      worst_doubling = std::max(worst_doubling, delta);
    }
    if (!report.passed) ++failures;
    std::printf(
        "r=%-4g alpha_sq=%-4g %-11s %-9s dim=%-4d %s  series<=%.2e "
        "doubling<=%.2e\n",
        point.r, point.alpha_sq,
        horizon::unruh::to_string(point.encoding).c_str(),
        horizon::unruh::to_string(point.protocol).c_str(),
        report.truncation_dim, report.passed ? "pass" : "FAIL", worst_series,
        worst_doubling);
  }
  if (checked == 0) {
    throw UsageError{"--r-max excludes every grid point"};
  }

  std::printf("\n%-26s %-18s %-18s\n", "quantity", "max_series_delta",
              "max_doubling_delta");
  for (const auto& [name, delta] : max_series) {
    std::printf("%-26s %-18.3e %-18.3e\n", name.c_str(), delta,
                max_doubling[name]);
  }
  std::printf("\nverified %zu points, %zu failed (tolerance %g)\n", checked,
              failures, tolerance);
  return failures == 0 ? 0 : 1;
}

struct FitFlags {
  std::vector<double> window{3.0, 6.0};
  std::string encoding = "dual_rail";
  std::string protocol = "quantum";
  std::string input;
  int points = 31;
};

int run_fit(const FitFlags& flags) {
  if (flags.window.size() != 2 || !(flags.window[0] < flags.window[1])) {
    throw UsageError{"--window expects lo,hi with lo < hi"};
  }
  const double lo = flags.window[0];
  const double hi = flags.window[1];
  const Encoding enc = horizon::unruh::encoding_from_string(flags.encoding);
  const Protocol proto = horizon::unruh::protocol_from_string(flags.protocol);

  std::vector<SweepRow> rows;
  if (!flags.input.empty()) {
    for (const SweepRow& row : horizon::csv::read_rows(flags.input)) {
      if (row.encoding == enc && row.protocol == proto) rows.push_back(row);
    }
  } else {
    if (flags.points < 5) throw UsageError{"--points must be at least 5"};
    SweepGrid grid;
    grid.start = lo;
    grid.stop = hi;
    grid.points = flags.points;
    grid.encodings = {enc};
    grid.protocols = {proto};
    rows = horizon::analysis::sweep(grid);
  }

  const auto fit = horizon::analysis::fit_exponential_decay(rows, lo, hi);
  std::printf("channel = %s %s\n", horizon::unruh::to_string(enc).c_str(),
              horizon::unruh::to_string(proto).c_str());
  std::printf("window = [%g, %g] (%zu rows)\n", fit.window_lo, fit.window_hi,
              rows.size());
  std::printf("gamma = %.12f\n", fit.gamma);
  std::printf("log_intercept = %.12f\n", fit.log_intercept);
  std::printf("rms_residual = %.12e\n", fit.rms_residual);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Classical and quantum information measures of bosonic channels "
      "across a causal horizon"};
  app.require_subcommand(1);

  PointFlags point_flags;
  CLI::App* point = app.add_subcommand(
      "point", "Evaluate every channel quantity at one parameter point");
  CLI::Option* opt_r = point->add_option("--r", point_flags.r,
                                         "Squeezing parameter (>= 0)");
  CLI::Option* opt_a =
      point->add_option("--a", point_flags.a, "Proper acceleration (> 0)");
  CLI::Option* opt_mass =
      point->add_option("--mass", point_flags.mass, "Black hole mass (> 0)");
  CLI::Option* opt_radius = point->add_option(
      "--radius", point_flags.radius, "Static observer radius (> 2M)");
  point->add_option("--omega", point_flags.omega, "Mode frequency (> 0)");
  point->add_option("--alpha-sq", point_flags.alpha_sq,
                    "Weight of logical zero in [0, 1]");
  point->add_option("--encoding", point_flags.encoding,
                    "single_rail | dual_rail");
  point->add_option("--protocol", point_flags.protocol,
                    "classical | quantum");

  SweepFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Write channel quantities over a parameter grid as CSV");
  sweep->add_option("--axis", sweep_flags.axis, "squeezing | acceleration");
  sweep->add_option("--start", sweep_flags.start, "First axis value");
  sweep->add_option("--stop", sweep_flags.stop, "Last axis value");
  sweep->add_option("--points", sweep_flags.points, "Grid size (>= 2)");
  sweep->add_option("--omega", sweep_flags.omega, "Mode frequency (> 0)");
  sweep->add_option("--alpha-sq", sweep_flags.alpha_sq,
                    "Weight of logical zero in [0, 1]");
  sweep->add_option("--encoding", sweep_flags.encoding,
                    "single_rail | dual_rail | both");
  sweep->add_option("--protocol", sweep_flags.protocol,
                    "classical | quantum | both");
  sweep->add_option("--out", sweep_flags.out, "Output CSV path")->required();

  std::string figures_dir = ".";
  CLI::App* figures = app.add_subcommand(
      "figures", "Regenerate fig1-fig4 CSV data over the default grid");
  figures->add_option("--out-dir", figures_dir, "Output directory");

  double verify_tolerance = 1e-6;
  double verify_r_max = 3.0;
  CLI::App* verify = app.add_subcommand(
      "verify", "Compare series against the brute-force pipeline");
  verify->add_option("--tolerance", verify_tolerance,
                     "Allowed absolute delta in bits");
  verify->add_option("--r-max", verify_r_max,
                     "Skip grid points above this squeezing");

  FitFlags fit_flags;
  CLI::App* fit = app.add_subcommand(
      "fit", "Fit exp(-gamma r) to the coherent information");
  fit->add_option("--window", fit_flags.window, "Fit window lo,hi")
      ->delimiter(',')
      ->expected(2);
  fit->add_option("--encoding", fit_flags.encoding,
                  "single_rail | dual_rail");
  fit->add_option("--protocol", fit_flags.protocol, "classical | quantum");
  fit->add_option("--input", fit_flags.input,
                  "Existing sweep CSV to fit instead of re-computing");
  fit->add_option("--points", fit_flags.points,
                  "Grid size when computing rows (>= 5)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  point_flags.has_r = opt_r->count() > 0;
  point_flags.has_a = opt_a->count() > 0;
  point_flags.has_mass = opt_mass->count() > 0;
  point_flags.has_radius = opt_radius->count() > 0;

  try {
    if (point->parsed()) return run_point(point_flags);
    if (sweep->parsed()) return run_sweep(sweep_flags);
    if (figures->parsed()) return run_figures(figures_dir);
    if (verify->parsed()) return run_verify(verify_tolerance, verify_r_max);
    if (fit->parsed()) return run_fit(fit_flags);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.message.c_str());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
