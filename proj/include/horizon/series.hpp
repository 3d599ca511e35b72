// series.hpp -- shared numerics for the closed-form evaluations: compensated
// geometric-tail summation, Gauss-Legendre quadrature on [0, inf), and the
// polylogarithm Li_{-1/2} needed by the fidelity formula.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "horizon/errors.hpp"

namespace horizon::series {

// Convergence knobs for every infinite sum in the closed-form module.
struct SeriesConfig {
  double term_epsilon = 1e-16;
  std::int64_t max_terms = 1000000;
  double r_min_analytic = 1e-8;

  void validate() const;
};

// Kahan-compensated accumulator.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// x * log2(x) with the measure-zero convention 0 * lb 0 = 0.
inline double xlb(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Sums term(0) + term(1) + ... where |term(n)| decays like a polynomial (of
// degree <= 3) times ratio^n, 0 <= ratio < 1.  Stops once the current term
// and the geometric tail bound |term| * rho / (1 - rho) with
// rho = ratio * ((n+2)/(n+1))^3 both fall below cfg.term_epsilon.  Throws
// ConvergenceError if cfg.max_terms is exhausted first.
template <typename TermFn>
double sum_geometric_tail(const SeriesConfig& cfg, double ratio,
                          TermFn&& term) {
  cfg.validate();
  if (!(ratio >= 0.0 && ratio < 1.0)) {
    throw DomainError("series ratio must lie in [0, 1)");
  }
  constexpr std::int64_t kMinTerms = 8;
  KahanSum acc;
  for (std::int64_t n = 0; n < cfg.max_terms; ++n) {
    const double t = term(n);
    acc.add(t);
    if (n < kMinTerms) continue;
    const double mag = std::fabs(t);
    if (mag >= cfg.term_epsilon) continue;
    const double g = static_cast<double>(n + 2) / static_cast<double>(n + 1);
    const double rho = ratio * g * g * g;
    if (rho < 1.0 && mag * rho / (1.0 - rho) < cfg.term_epsilon) {
      return acc.value();
    }
  }
  throw ConvergenceError("series did not converge within max_terms");
}

struct GoldenResult {
  double max_value = 0.0;
  double argmax = 0.0;
};

// Golden-section maximization of a smooth unimodal function on [lo, hi],
// run until the bracket is narrower than `width`.
template <typename Fn>
GoldenResult golden_section_max(Fn&& f, double lo, double hi, double width) {
  constexpr double kInvPhi = 0.61803398874989484820;  // (sqrt 5 - 1) / 2
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > width) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  const double xm = 0.5 * (a + b);
  return GoldenResult{f(xm), xm};
}

// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

// Integrates f over [0, inf) assuming an exp(-x)-type envelope: fixed panels
// (0,1), (1,3), (3,8), (8,20), (20,60) with an 80-point rule each.  The
// integrand must already include its own damping factor.
template <typename Fn>
double integrate_exponential_tail(Fn&& f) {
  static const GaussRule rule = gauss_legendre(80);
  static constexpr double edges[] = {0.0, 1.0, 3.0, 8.0, 20.0, 60.0};
  KahanSum acc;
  for (std::size_t p = 0; p + 1 < sizeof(edges) / sizeof(edges[0]); ++p) {
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    const double mid = 0.5 * (edges[p + 1] + edges[p]);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      acc.add(half * rule.weights[i] * f(mid + half * rule.nodes[i]));
    }
  }
  return acc.value();
}

// mu = -ln(tanh^2 r), evaluated without cancellation for large r.
double neg_log_tanh_sq(double r);

// True when the direct term-by-term sum of a tanh^{2n} r series fits the
// term budget; false signals the caller to switch to its asymptotic branch.
bool direct_series_feasible(double tanh_sq, const SeriesConfig& cfg);

// Li_{-1/2}(z) = sum_{n>=1} sqrt(n) z^n for z in [0, 1).  Near z = 1 the
// sum is evaluated through the convergent Hurwitz-zeta expansion in
// mu = -ln z instead of term by term.
double polylog_minus_half(double z, const SeriesConfig& cfg = {});

// Same function parameterized by mu = -ln z; preferred when z sits so close
// to 1 that forming it in double precision would round away the distance.
double polylog_minus_half_from_mu(double mu, const SeriesConfig& cfg = {});

}  // namespace horizon::series
