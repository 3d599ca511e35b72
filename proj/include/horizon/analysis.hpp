#pragma once

// analysis.hpp -- parameter sweeps, plateau estimation, and exponential
// decay fits of the coherent information.

#include <string>
#include <vector>

#include "horizon/closed_form.hpp"
#include "horizon/unruh.hpp"

namespace horizon::analysis {

enum class SweepAxis { acceleration, squeezing };

std::string to_string(SweepAxis axis);
SweepAxis axis_from_string(const std::string& name);

struct SweepGrid {
  SweepAxis axis = SweepAxis::squeezing;
  double start = 0.0;
  double stop = 6.0;
  int points = 200;
  double omega = 1.0;
  double alpha_sq = 0.5;
  std::vector<unruh::Encoding> encodings{unruh::Encoding::single_rail,
                                         unruh::Encoding::dual_rail};
  std::vector<unruh::Protocol> protocols{unruh::Protocol::classical,
                                         unruh::Protocol::quantum};

  void validate() const;
};

struct SweepRow {
  double a = 0.0;
  double r = 0.0;
  double omega = 1.0;
  double alpha_sq = 0.5;
  unruh::Encoding encoding = unruh::Encoding::single_rail;
  unruh::Protocol protocol = unruh::Protocol::classical;
  closed_form::ChannelQuantities quantities;
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

// Series settings used for sweeps and figure data: identical accuracy
// targets, smaller term budget so the large-squeezing branch takes over a
// little earlier.  The branch values at the crossover agree far inside every
// tolerance used downstream.
closed_form::SeriesConfig sweep_series_config();

// Evaluates the grid row by row, ascending axis value, then encoding, then
// protocol, in the order listed in the grid.  A row that fails to converge
// is kept with its error message in `status` instead of aborting the sweep.
// Identical grids produce bitwise-identical rows.
std::vector<SweepRow> sweep(
    const SweepGrid& grid,
    const closed_form::SeriesConfig& cfg = sweep_series_config());

struct FitResult {
  double gamma = 0.0;
  double log_intercept = 0.0;
  double rms_residual = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

// Least-squares line through (r, ln coherent_info) for rows inside the
// window; gamma is minus the slope.  Requires at least five rows with
// positive coherent information; non-positive values inside the window are
// a domain error (shrink the window).
FitResult fit_exponential_decay(const std::vector<SweepRow>& rows,
                                double window_lo, double window_hi);

struct PlateauEstimate {
  double value = 0.0;
  double r_max = 0.0;
  bool converged = false;
};

// Capacity at the largest sampled squeezing, flagged as converged when it
// moved by less than 1e-2 bits over the final two units of r.  The rows are
// expected to describe a single channel and to reach r >= 6.
PlateauEstimate estimate_plateau(const std::vector<SweepRow>& rows);

// Worker count for row evaluation: HORIZON_CHANNELS_THREADS when set,
// otherwise the hardware concurrency, never less than one.
int thread_budget();

}  // namespace horizon::analysis
