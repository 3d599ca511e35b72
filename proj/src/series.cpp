#include "horizon/series.hpp"

#include <cmath>

namespace horizon::series {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Gamma(3/2) = sqrt(pi)/2.
constexpr double kGammaThreeHalves = 0.88622692545275801365;
// zeta(-1/2 - k) for k = 0..10, the coefficients of the expansion of
// Li_{-1/2}(e^-mu) around mu = 0.
constexpr double kZetaTable[] = {
    -0.20788622497735456602,   -0.025485201889833035950,
    0.0085169287778503305424,  0.0044410113354794319585,
    -0.0030916692472158338448, -0.0026714580198992245990,
    0.0027467679395368687584,  0.0032690395726002200217,
    -0.0044160328730048898084, -0.0066721722964666407568,
    0.011146122473942814136,
};

// Terms needed for a tanh^{2n} r tail to fall below ~1e-16, with headroom
// for the polynomial prefactors the physical series carry.
double predicted_terms(double mu) { return (37.0 / mu) * 1.6; }

}  // namespace

void SeriesConfig::validate() const {
  if (!(term_epsilon > 0.0 && term_epsilon < 1.0)) {
    throw DomainError("term_epsilon must lie in (0, 1)");
  }
  if (max_terms < 100) throw DomainError("max_terms must be >= 100");
  if (!(r_min_analytic >= 0.0) || !std::isfinite(r_min_analytic)) {
    throw DomainError("r_min_analytic must be finite and >= 0");
  }
}

GaussRule gauss_legendre(int n) {
  if (n < 2) throw InputError("Gauss-Legendre order must be >= 2");
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-based seed, then Newton on the Legendre recurrence.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

double neg_log_tanh_sq(double r) {
  if (!(r > 0.0)) throw DomainError("neg_log_tanh_sq requires r > 0");
  const double e = std::exp(-2.0 * r);
  // tanh r = (1 - e)/(1 + e), so -2 ln tanh r keeps full precision via log1p.
  return 2.0 * (std::log1p(e) - std::log1p(-e));
}

bool direct_series_feasible(double tanh_sq, const SeriesConfig& cfg) {
  cfg.validate();
  if (tanh_sq <= 0.0) return true;
  if (tanh_sq >= 1.0) return false;
  return predicted_terms(-std::log(tanh_sq)) <=
         static_cast<double>(cfg.max_terms);
}

double polylog_minus_half(double z, const SeriesConfig& cfg) {
  if (!(z >= 0.0 && z < 1.0)) {
    throw DomainError("polylog_minus_half requires z in [0, 1)");
  }
  if (z == 0.0) return 0.0;
  return polylog_minus_half_from_mu(-std::log(z), cfg);
}

double polylog_minus_half_from_mu(double mu, const SeriesConfig& cfg) {
  cfg.validate();
  if (!(mu > 0.0)) throw DomainError("polylog expansion requires mu > 0");
  if (std::isinf(mu)) return 0.0;
  if (predicted_terms(mu) <= static_cast<double>(cfg.max_terms)) {
    const double z = std::exp(-mu);
    double w = z;
    return sum_geometric_tail(cfg, z, [&](std::int64_t n) {
      const double t = w * std::sqrt(static_cast<double>(n + 1));
      w *= z;
      return t;
    });
  }
  // Convergent expansion around mu = 0 (|mu| < 2 pi):
  //   Li_{-1/2}(e^-mu) = Gamma(3/2) mu^{-3/2} + sum_k zeta(-1/2-k)(-mu)^k/k!
  double acc = kGammaThreeHalves / (mu * std::sqrt(mu));
  double pw = 1.0;  // (-mu)^k / k!
  for (std::size_t k = 0; k < sizeof(kZetaTable) / sizeof(kZetaTable[0]);
       ++k) {
    acc += kZetaTable[k] * pw;
    pw *= -mu / static_cast<double>(k + 1);
  }
  return acc;
}

}  // namespace horizon::series
