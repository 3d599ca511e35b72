#include "horizon/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "horizon/errors.hpp"

namespace horizon::analysis {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string sanitize_status(const std::string& text) {
  std::string out = text;
  for (char& ch : out) {
    if (ch == ',' || ch == '"') ch = ';';
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  return out.empty() ? std::string("error") : out;
}

closed_form::ChannelQuantities nan_quantities() {
  closed_form::ChannelQuantities q;
  q.fidelity = kNan;
  q.mutual_info_bits = kNan;
  q.conditional_entropy_bits = kNan;
  q.capacity_bits = kNan;
  q.coherent_info_bits = kNan;
  q.source_entropy_bits = kNan;
  return q;
}

void evaluate_row(SweepRow& row, const closed_form::SeriesConfig& cfg) {
  try {
    row.quantities = closed_form::derived_quantities(
        unruh::Preparation{row.alpha_sq}, row.encoding, row.protocol,
        unruh::SqueezingParameter{row.r}, cfg);
    row.status = "ok";
  } catch (const std::exception& ex) {
    row.quantities = nan_quantities();
    row.status = sanitize_status(ex.what());
  }
}

}  // namespace

std::string to_string(SweepAxis axis) {
  return axis == SweepAxis::acceleration ? "acceleration" : "squeezing";
}

SweepAxis axis_from_string(const std::string& name) {
  if (name == "acceleration" || name == "a") return SweepAxis::acceleration;
  if (name == "squeezing" || name == "r") return SweepAxis::squeezing;
  throw InputError("unknown sweep axis: " + name);
}

void SweepGrid::validate() const {
  if (!(start < stop)) throw DomainError("sweep start must be below stop");
  if (points < 2) throw DomainError("sweep needs at least two points");
  if (axis == SweepAxis::acceleration && !(start > 0.0)) {
    throw DomainError("acceleration sweeps must start above zero");
  }
  if (!(omega > 0.0)) throw DomainError("omega must be > 0");
  if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) {
    throw DomainError("alpha_sq must lie in [0, 1]");
  }
  if (encodings.empty()) throw InputError("sweep needs at least one encoding");
  if (protocols.empty()) throw InputError("sweep needs at least one protocol");
}

closed_form::SeriesConfig sweep_series_config() {
  closed_form::SeriesConfig cfg;
  cfg.max_terms = 150000;
  return cfg;
}

int thread_budget() {
  if (const char* raw = std::getenv("HORIZON_CHANNELS_THREADS")) {
    int value = 0;
    const char* end = raw;
    while (*end != '\0') ++end;
    const auto res = std::from_chars(raw, end, value);
    if (res.ec == std::errc() && res.ptr == end && value >= 1) {
      return std::min(value, 256);
    }
    throw InputError("HORIZON_CHANNELS_THREADS must be a positive integer");
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<SweepRow> sweep(const SweepGrid& grid,
                            const closed_form::SeriesConfig& cfg) {
  grid.validate();
  cfg.validate();

  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(grid.points) * grid.encodings.size() *
               grid.protocols.size());
  const double step = (grid.stop - grid.start) / (grid.points - 1);
  for (int i = 0; i < grid.points; ++i) {
    const double value =
        i + 1 == grid.points ? grid.stop : grid.start + step * i;
    SweepRow base;
    base.omega = grid.omega;
    base.alpha_sq = grid.alpha_sq;
    if (grid.axis == SweepAxis::squeezing) {
      base.r = value;
      const unruh::AccelerationSpec spec = unruh::acceleration_from_squeezing(
          unruh::SqueezingParameter{value}, grid.omega);
      base.a = spec.a;
    } else {
      base.a = value;
      base.r =
          unruh::squeezing_from_acceleration(
              unruh::AccelerationSpec{value, grid.omega})
              .r;
    }
    for (unruh::Encoding enc : grid.encodings) {
      for (unruh::Protocol proto : grid.protocols) {
        SweepRow row = base;
        row.encoding = enc;
        row.protocol = proto;
        rows.push_back(std::move(row));
      }
    }
  }

  const int workers =
      std::min<int>(thread_budget(), static_cast<int>(rows.size()));
  if (workers <= 1) {
    for (SweepRow& row : rows) evaluate_row(row, cfg);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&rows, &cfg, w, workers] {
        for (std::size_t i = w; i < rows.size(); i += workers) {
          evaluate_row(rows[i], cfg);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }
  return rows;
}

FitResult fit_exponential_decay(const std::vector<SweepRow>& rows,
                                double window_lo, double window_hi) {
  if (!(window_lo < window_hi)) {
    throw DomainError("fit window must satisfy lo < hi");
  }
  std::vector<std::pair<double, double>> samples;  // (r, ln CI)
  for (const SweepRow& row : rows) {
    if (!row.ok()) continue;
    if (row.r < window_lo || row.r > window_hi) continue;
    const double ci = row.quantities.coherent_info_bits;
    if (!(ci > 0.0)) {
      throw DomainError(
          "coherent information is not positive everywhere in the fit "
          "window; shrink the upper edge");
    }
    samples.emplace_back(row.r, std::log(ci));
  }
  if (samples.size() < 5) {
    throw DomainError(
        "fit window must contain at least five rows with positive coherent "
        "information");
  }

  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : samples) {
    sx += x;
    sy += y;
  }
  const double n = static_cast<double>(samples.size());
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : samples) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) throw DomainError("fit window has no spread in r");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;

  double ss = 0.0;
  for (const auto& [x, y] : samples) {
    const double resid = y - (intercept + slope * x);
    ss += resid * resid;
  }

  FitResult fit;
  fit.gamma = -slope;
  fit.log_intercept = intercept;
  fit.rms_residual = std::sqrt(ss / n);
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  return fit;
}

PlateauEstimate estimate_plateau(const std::vector<SweepRow>& rows) {
  const SweepRow* last = nullptr;
  for (const SweepRow& row : rows) {
    if (!row.ok()) continue;
    if (last == nullptr || row.r > last->r) last = &row;
  }
  if (last == nullptr) throw DomainError("plateau estimate needs rows");
  if (last->r < 6.0) {
    throw DomainError("plateau estimate needs rows reaching r >= 6");
  }
  const double r_ref = last->r - 2.0;
  const SweepRow* ref = nullptr;
  for (const SweepRow& row : rows) {
    if (!row.ok() || row.r > r_ref) continue;
    if (ref == nullptr || row.r > ref->r) ref = &row;
  }

  PlateauEstimate est;
  est.value = last->quantities.capacity_bits;
  est.r_max = last->r;
  est.converged =
      ref != nullptr &&
      std::fabs(last->quantities.capacity_bits - ref->quantities.capacity_bits) <
          1e-2;
  return est;
}

}  // namespace horizon::analysis
