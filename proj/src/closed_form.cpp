#include "horizon/closed_form.hpp"

#include <cmath>
#include <cstdint>

#include "horizon/errors.hpp"
#include "horizon/fock.hpp"

namespace horizon::closed_form {

namespace {

using series::xlb;
using unruh::Encoding;
using unruh::Protocol;
using unruh::SqueezingParameter;

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kGoldenWidth = 1e-8;
constexpr double kSymmetricTol = 1e-12;

struct Hyperbolic {
  double T;    // tanh^2 r
  double c2;   // cosh^2 r
  double c4;
  double c6;
};

Hyperbolic hyperbolic(double r) {
  const double t = std::tanh(r);
  const double c = std::cosh(r);
  Hyperbolic h;
  h.T = t * t;
  h.c2 = c * c;
  h.c4 = h.c2 * h.c2;
  h.c6 = h.c4 * h.c2;
  return h;
}

// ln cosh r without overflow for large r.
double log_cosh(double r) {
  return r + std::log1p(std::exp(-2.0 * r)) - kLn2;
}

// Golden-section maximization over the preparation weight.
template <typename Fn>
CapacityResult golden_max(Fn&& f, double lo, double hi) {
  const series::GoldenResult g =
      series::golden_section_max(f, lo, hi, kGoldenWidth);
  return CapacityResult{g.max_value, g.argmax};
}

double fidelity_single(const SqueezingParameter& r, const SeriesConfig& cfg) {
  if (r.r < cfg.r_min_analytic) return 0.0;
  // Beyond this the value differs from the pi/4 limit by far less than one
  // ulp and the cosh powers would overflow.
  if (r.r > 100.0) return 0.25 * kPi;
  const double t = std::tanh(r.r);
  const double T = t * t;
  double li;
  if (series::direct_series_feasible(T, cfg)) {
    li = series::polylog_minus_half(T, cfg);
  } else {
    li = series::polylog_minus_half_from_mu(series::neg_log_tanh_sq(r.r), cfg);
  }
  const double c = std::cosh(r.r);
  const double root = li / (std::sinh(r.r) * c * c);
  return root * root;
}

}  // namespace

double fidelity_series(const SqueezingParameter& r, Encoding encoding,
                       const SeriesConfig& cfg) {
  r.validate();
  cfg.validate();
  const double f = fidelity_single(r, cfg);
  return encoding == Encoding::single_rail ? f : f * f;
}

double mi_classical_single(double alpha_sq, const SqueezingParameter& r,
                           const SeriesConfig& cfg) {
  unruh::Preparation{alpha_sq}.validate();
  r.validate();
  cfg.validate();
  const double a2 = alpha_sq;
  const double b2 = 1.0 - alpha_sq;
  if (a2 == 0.0 || b2 == 0.0) return 0.0;  // constant source
  const double h2 = fock::binary_entropy(a2);
  if (r.r < cfg.r_min_analytic) return h2;

  const Hyperbolic hy = hyperbolic(r.r);
  if (series::direct_series_feasible(hy.T, cfg)) {
    // Joint weights p_n = a2 T^n / c^2 (vacuum branch) and
    // q_n = b2 n T^{n-1} / c^4 (photon branch); the summand is the
    // per-level conditional entropy of the sender bit.
    double tn = 1.0;
    double tn_prev = 0.0;
    const double cond =
        series::sum_geometric_tail(cfg, hy.T, [&](std::int64_t n) {
          const double p = a2 * tn / hy.c2;
          const double q =
              n == 0 ? 0.0 : b2 * static_cast<double>(n) * tn_prev / hy.c4;
          tn_prev = tn;
          tn *= hy.T;
          return xlb(p + q) - xlb(p) - xlb(q);
        });
    return h2 - cond;
  }
  // Large-r continuum: levels concentrate at n ~ 1/mu and the sum becomes an
  // integral over x = mu n with densities a2 e^-x and b2 x e^-x.
  const double cond = series::integrate_exponential_tail([&](double x) {
    const double p = a2 * std::exp(-x);
    const double q = b2 * x * std::exp(-x);
    return xlb(p + q) - xlb(p) - xlb(q);
  });
  return h2 - cond;
}

double mi_classical_dual(const SqueezingParameter& r, const SeriesConfig& cfg) {
  r.validate();
  cfg.validate();
  if (r.r < cfg.r_min_analytic) return 1.0;
  const Hyperbolic hy = hyperbolic(r.r);
  if (!series::direct_series_feasible(hy.T, cfg)) {
    return 1.0 - 0.5 / kLn2;  // continuum limit of the conditional entropy
  }
  // Photon-count pairs (i, j >= 1) grouped by the diagonal m = i + j; the
  // symmetric preparation reduces the inner sum to
  // m (m-1) lb(m) / 2 - sum_{i<m} i lb i, tracked incrementally.
  double w = hy.T / hy.c6;  // T^{m-1} / c^6 at m = 2
  double cum = 0.0;         // sum_{i=1}^{m-1} i lb i
  const double cond =
      series::sum_geometric_tail(cfg, hy.T, [&](std::int64_t n) {
        const double m = static_cast<double>(n + 2);
        cum += (m - 1.0) * std::log2(m - 1.0);
        const double term = w * (0.5 * m * (m - 1.0) * std::log2(m) - cum);
        w *= hy.T;
        return term;
      });
  return 1.0 - cond;
}

double mi_classical_dual_general(double alpha_sq, const SqueezingParameter& r,
                                 const SeriesConfig& cfg) {
  unruh::Preparation{alpha_sq}.validate();
  r.validate();
  cfg.validate();
  const double a2 = alpha_sq;
  const double b2 = 1.0 - alpha_sq;
  if (a2 == 0.0 || b2 == 0.0) return 0.0;
  if (std::fabs(a2 - 0.5) < kSymmetricTol) return mi_classical_dual(r, cfg);
  const double h2 = fock::binary_entropy(a2);
  if (r.r < cfg.r_min_analytic) return h2;

  const Hyperbolic hy = hyperbolic(r.r);
  if (!series::direct_series_feasible(hy.T, cfg)) {
    throw ConvergenceError(
        "dual-rail series away from alpha_sq = 1/2 exceeds the term budget "
        "at this squeezing; only the symmetric preparation has a large-r "
        "branch");
  }
  // Full two-dimensional sum over the diagonals m = i + j; the common
  // T^{m-1}/c^6 scale cancels between the three xlb pieces, so the inner
  // loop works with the O(m) weights directly.
  std::int64_t budget = cfg.max_terms;
  double w = hy.T / hy.c6;  // T^{m-1} / c^6 at m = 2
  const double cond =
      series::sum_geometric_tail(cfg, hy.T, [&](std::int64_t n) {
        const std::int64_t m = n + 2;
        budget -= m - 1;
        if (budget < 0) {
          throw ConvergenceError(
              "dual-rail series exhausted the total term budget");
        }
        double inner = 0.0;
        for (std::int64_t i = 1; i < m; ++i) {
          const double u = a2 * static_cast<double>(i);
          const double v = b2 * static_cast<double>(m - i);
          inner += xlb(u + v) - xlb(u) - xlb(v);
        }
        const double term = w * inner;
        w *= hy.T;
        return term;
      });
  return h2 - cond;
}

double ce_quantum_single(double alpha_sq, const SqueezingParameter& r,
                         const SeriesConfig& cfg) {
  unruh::Preparation{alpha_sq}.validate();
  r.validate();
  cfg.validate();
  const double a2 = alpha_sq;
  const double b2 = 1.0 - alpha_sq;
  if (a2 == 0.0 || b2 == 0.0) return 0.0;  // product state
  if (r.r < cfg.r_min_analytic) return -fock::binary_entropy(a2);

  const Hyperbolic hy = hyperbolic(r.r);
  if (series::direct_series_feasible(hy.T, cfg)) {
    // The joint state is a direct sum of rank-one blocks spanning
    // {(0, n), (1, n+1)}: eigenvalues g_n; the receiver marginal is
    // diagonal with entries h_n.  CE = sum_n xlb(h_n) - xlb(g_n).
    double tn = 1.0;
    double tn_prev = 0.0;
    return series::sum_geometric_tail(cfg, hy.T, [&](std::int64_t n) {
      const double g = tn * (a2 / hy.c2 + b2 * (n + 1.0) / hy.c4);
      const double h =
          a2 * tn / hy.c2 +
          (n == 0 ? 0.0 : b2 * static_cast<double>(n) * tn_prev / hy.c4);
      tn_prev = tn;
      tn *= hy.T;
      return xlb(h) - xlb(g);
    });
  }
  // Large-r expansion: the g/h difference is O(1/c^4) per level and the
  // x = mu n continuum leaves a single 1/c^2 prefactor.
  const double integral = series::integrate_exponential_tail([&](double x) {
    return std::exp(-x) * (1.0 - x) * std::log2(a2 + b2 * x);
  });
  const double inv_c2 = std::exp(-2.0 * log_cosh(r.r));
  return -(b2 * inv_c2) * (1.0 / kLn2 + integral);
}

double ce_quantum_dual(const SqueezingParameter& r, const SeriesConfig& cfg) {
  r.validate();
  cfg.validate();
  if (r.r < cfg.r_min_analytic) return -1.0;
  const Hyperbolic hy = hyperbolic(r.r);
  if (series::direct_series_feasible(hy.T, cfg)) {
    double w = 1.0 / hy.c6;  // T^p / c^6
    return series::sum_geometric_tail(cfg, hy.T, [&](std::int64_t p) {
      const double pd = static_cast<double>(p);
      const double term = -0.5 * (pd + 1.0) * (pd + 2.0) * w *
                          std::log1p(1.0 / (pd + 1.0)) / kLn2;
      w *= hy.T;
      return term;
    });
  }
  // Asymptotic form -(T c^4 + 3/2 c^2 + ln(1-T)/(6T)) / (2 c^6 ln 2),
  // evaluated through ln cosh to stay finite at large r (1 - T = sech^2 r).
  const double lc = log_cosh(r.r);
  const double i2 = std::exp(-2.0 * lc);
  const double i4 = std::exp(-4.0 * lc);
  const double i6 = std::exp(-6.0 * lc);
  const double log_one_minus_t = -2.0 * lc;
  return -(hy.T * i2 + 1.5 * i4 + log_one_minus_t * i6 / (6.0 * hy.T)) /
         (2.0 * kLn2);
}

double ce_quantum_dual_general(double alpha_sq, const SqueezingParameter& r,
                               const SeriesConfig& cfg) {
  unruh::Preparation{alpha_sq}.validate();
  r.validate();
  cfg.validate();
  const double a2 = alpha_sq;
  const double b2 = 1.0 - alpha_sq;
  if (a2 == 0.0 || b2 == 0.0) return 0.0;
  if (std::fabs(a2 - 0.5) < kSymmetricTol) return ce_quantum_dual(r, cfg);
  if (r.r < cfg.r_min_analytic) return -fock::binary_entropy(a2);

  const Hyperbolic hy = hyperbolic(r.r);
  if (!series::direct_series_feasible(hy.T, cfg)) {
    throw ConvergenceError(
        "dual-rail series away from alpha_sq = 1/2 exceeds the term budget "
        "at this squeezing; only the symmetric preparation has a large-r "
        "branch");
  }
  // Joint eigenvalues lambda_{ij} = (a2 i + b2 (j+1)) T^{i+j-1}/c^6 (i >= 1)
  // against the diagonal receiver marginal (a2 i + b2 j) T^{i+j-1}/c^6;
  // CE = sum xlb(marginal) - xlb(lambda), grouped by diagonals m = i + j.
  std::int64_t budget = cfg.max_terms;
  double w = 1.0 / hy.c6;  // T^{m-1} / c^6 at m = 1
  return series::sum_geometric_tail(cfg, hy.T, [&](std::int64_t n) {
    const std::int64_t m = n + 1;
    budget -= 2 * m + 1;
    if (budget < 0) {
      throw ConvergenceError(
          "dual-rail series exhausted the total term budget");
    }
    double term = 0.0;
    for (std::int64_t i = 0; i <= m; ++i) {
      const double j = static_cast<double>(m - i);
      term += xlb(w * (a2 * static_cast<double>(i) + b2 * j));
      if (i >= 1) {
        term -= xlb(w * (a2 * static_cast<double>(i) + b2 * (j + 1.0)));
      }
    }
    w *= hy.T;
    return term;
  });
}

CapacityResult classical_capacity(Encoding encoding,
                                  const SqueezingParameter& r,
                                  const SeriesConfig& cfg) {
  r.validate();
  cfg.validate();
  if (encoding == Encoding::dual_rail) {
    // Exactly symmetric in the logical labels, so 1/2 is the maximizer.
    return CapacityResult{mi_classical_dual(r, cfg), 0.5};
  }
  return golden_max(
      [&](double a2) { return mi_classical_single(a2, r, cfg); }, 0.0, 1.0);
}

CapacityResult quantum_capacity(Encoding encoding, const SqueezingParameter& r,
                                const SeriesConfig& cfg, bool maximize) {
  r.validate();
  cfg.validate();
  if (!maximize) {
    const double ci = encoding == Encoding::single_rail
                          ? -ce_quantum_single(0.5, r, cfg)
                          : -ce_quantum_dual(r, cfg);
    return CapacityResult{ci, 0.5};
  }
  if (encoding == Encoding::single_rail) {
    return golden_max(
        [&](double a2) { return -ce_quantum_single(a2, r, cfg); }, 0.0, 1.0);
  }
  return golden_max(
      [&](double a2) { return -ce_quantum_dual_general(a2, r, cfg); }, 0.0,
      1.0);
}

ChannelQuantities derived_quantities(const unruh::Preparation& prep,
                                     Encoding encoding, Protocol protocol,
                                     const SqueezingParameter& r,
                                     const SeriesConfig& cfg,
                                     const DerivedOptions& options) {
  prep.validate();
  r.validate();
  cfg.validate();
  ChannelQuantities q;
  q.source_entropy_bits = fock::binary_entropy(prep.alpha_sq);
  q.fidelity = fidelity_series(r, encoding, cfg);
  if (protocol == Protocol::classical) {
    q.mutual_info_bits =
        encoding == Encoding::single_rail
            ? mi_classical_single(prep.alpha_sq, r, cfg)
            : mi_classical_dual_general(prep.alpha_sq, r, cfg);
    q.conditional_entropy_bits = q.source_entropy_bits - q.mutual_info_bits;
    q.capacity_bits = classical_capacity(encoding, r, cfg).capacity_bits;
  } else {
    q.conditional_entropy_bits =
        encoding == Encoding::single_rail
            ? ce_quantum_single(prep.alpha_sq, r, cfg)
            : ce_quantum_dual_general(prep.alpha_sq, r, cfg);
    q.mutual_info_bits = q.source_entropy_bits - q.conditional_entropy_bits;
    q.capacity_bits =
        quantum_capacity(encoding, r, cfg, options.maximize_coherent_info)
            .capacity_bits;
  }
  q.coherent_info_bits = -q.conditional_entropy_bits;
  return q;
}

}  // namespace horizon::closed_form
