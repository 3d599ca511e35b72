#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>

#include "doctest.h"
#include "horizon/series.hpp"

using namespace horizon;
using series::SeriesConfig;

TEST_CASE("series config validation") {
  CHECK_NOTHROW(SeriesConfig{}.validate());
  SeriesConfig bad_eps;
  bad_eps.term_epsilon = 0.0;
  CHECK_THROWS_AS(bad_eps.validate(), DomainError);
  bad_eps.term_epsilon = 1.0;
  CHECK_THROWS_AS(bad_eps.validate(), DomainError);
  SeriesConfig bad_budget;
  bad_budget.max_terms = 99;
  CHECK_THROWS_AS(bad_budget.validate(), DomainError);
}

TEST_CASE("kahan summation keeps sub-epsilon contributions") {
  series::KahanSum acc;
  acc.add(1.0);
  for (int i = 0; i < 10000; ++i) acc.add(1e-16);
  // A naive accumulator would return exactly 1.0 here.
  CHECK(acc.value() - 1.0 == doctest::Approx(1e-12).epsilon(1e-6));
}

TEST_CASE("geometric tail summation") {
  const SeriesConfig cfg;
  for (double q : {0.125, 0.5, 0.9}) {
    const double sum = series::sum_geometric_tail(
        cfg, q, [q](std::int64_t n) { return std::pow(q, double(n)); });
    CHECK(sum == doctest::Approx(1.0 / (1.0 - q)).epsilon(1e-14));

    // Linear polynomial times geometric: sum (n+1) q^n = (1-q)^-2.
    const double sum_poly = series::sum_geometric_tail(
        cfg, q,
        [q](std::int64_t n) { return (n + 1.0) * std::pow(q, double(n)); });
    CHECK(sum_poly ==
          doctest::Approx(1.0 / ((1.0 - q) * (1.0 - q))).epsilon(1e-13));
  }

  // Cubic polynomial envelope (the hardest case the stop rule must bound).
  const double q = 0.75;
  double expected = 0.0;
  for (int n = 0; n < 400; ++n) {
    expected += (n + 1.0) * (n + 1.0) * (n + 1.0) * std::pow(q, double(n));
  }
  const double cubic = series::sum_geometric_tail(cfg, q, [q](std::int64_t n) {
    return (n + 1.0) * (n + 1.0) * (n + 1.0) * std::pow(q, double(n));
  });
  CHECK(cubic == doctest::Approx(expected).epsilon(1e-12));

  CHECK_THROWS_AS(
      series::sum_geometric_tail(cfg, 1.0, [](std::int64_t) { return 1.0; }),
      DomainError);
  CHECK_THROWS_AS(
      series::sum_geometric_tail(cfg, -0.1, [](std::int64_t) { return 1.0; }),
      DomainError);

  SeriesConfig tight;
  tight.max_terms = 100;
  CHECK_THROWS_AS(series::sum_geometric_tail(
                      tight, 0.9999,
                      [](std::int64_t n) { return std::pow(0.9999, double(n)); }),
                  ConvergenceError);
}

TEST_CASE("golden section maximization") {
  const auto para = [](double x) { return -(x - 0.3) * (x - 0.3); };
  const auto peak = series::golden_section_max(para, 0.0, 1.0, 1e-10);
  CHECK(peak.argmax == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(peak.max_value == doctest::Approx(0.0).epsilon(1e-14));

  const double pi = std::acos(-1.0);
  const auto sine =
      series::golden_section_max([](double x) { return std::sin(x); }, 0.0,
                                 pi, 1e-9);
  CHECK(sine.argmax == doctest::Approx(pi / 2.0).epsilon(1e-7));
  CHECK(sine.max_value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gauss-legendre rule") {
  const auto rule = series::gauss_legendre(80);
  REQUIRE(rule.nodes.size() == 80);
  REQUIRE(rule.weights.size() == 80);
  double weight_sum = 0.0;
  double x2 = 0.0;
  double x20 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    weight_sum += rule.weights[i];
    x2 += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
    x20 += rule.weights[i] * std::pow(rule.nodes[i], 20.0);
  }
  CHECK(weight_sum == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(x20 == doctest::Approx(2.0 / 21.0).epsilon(1e-12));

  CHECK_THROWS_AS(series::gauss_legendre(1), InputError);
}

TEST_CASE("exponential tail integration") {
  CHECK(series::integrate_exponential_tail(
            [](double x) { return std::exp(-x); }) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(series::integrate_exponential_tail(
            [](double x) { return x * x * std::exp(-x); }) ==
        doctest::Approx(2.0).epsilon(1e-11));
  // int_0^inf e^-x ln(1 + x) dx = e E_1(1).
  CHECK(series::integrate_exponential_tail(
            [](double x) { return std::exp(-x) * std::log1p(x); }) ==
        doctest::Approx(0.59634736232319407).epsilon(1e-10));
}

TEST_CASE("negated log tanh squared") {
  for (double r : {0.3, 1.0, 2.5}) {
    CHECK(series::neg_log_tanh_sq(r) ==
          doctest::Approx(-2.0 * std::log(std::tanh(r))).epsilon(1e-14));
  }
  // Large r: mu ~ 4 exp(-2r), far below where tanh itself rounds to 1.
  const double mu = series::neg_log_tanh_sq(30.0);
  CHECK(mu == doctest::Approx(4.0 * std::exp(-60.0)).epsilon(1e-8));
  CHECK(mu > 0.0);
  CHECK_THROWS_AS(series::neg_log_tanh_sq(0.0), DomainError);
}

TEST_CASE("feasibility predictor") {
  const SeriesConfig cfg;
  CHECK(series::direct_series_feasible(0.0, cfg));
  CHECK(series::direct_series_feasible(0.5, cfg));
  CHECK_FALSE(series::direct_series_feasible(1.0 - 1e-12, cfg));
  SeriesConfig small;
  small.max_terms = 1000;
  CHECK_FALSE(series::direct_series_feasible(0.999, small));
}

TEST_CASE("polylog of order minus one half") {
  const SeriesConfig cfg;
  CHECK(series::polylog_minus_half(0.0, cfg) == 0.0);

  // Small argument: direct comparison against the defining series.
  for (double z : {0.1, 0.5, 0.8}) {
    double direct = 0.0;
    for (int n = 1; n < 400; ++n) direct += std::sqrt(double(n)) * std::pow(z, n);
    CHECK(series::polylog_minus_half(z, cfg) ==
          doctest::Approx(direct).epsilon(1e-13));
  }

  // Crossover consistency: direct summation and the expansion in
  // mu = -ln z agree where both are available.  The starved budget forces
  // the mu route onto its expansion branch.
  SeriesConfig starved;
  starved.max_terms = 100;
  for (double r : {1.5, 2.0, 2.5}) {
    const double z = std::pow(std::tanh(r), 2.0);
    const double mu = series::neg_log_tanh_sq(r);
    const double via_z = series::polylog_minus_half(z, cfg);
    const double via_mu = series::polylog_minus_half_from_mu(mu, starved);
    CHECK(via_mu == doctest::Approx(via_z).epsilon(1e-11));
  }

  CHECK_THROWS_AS(series::polylog_minus_half(1.0, cfg), DomainError);
  CHECK_THROWS_AS(series::polylog_minus_half(-0.2, cfg), DomainError);
  CHECK_THROWS_AS(series::polylog_minus_half_from_mu(0.0, cfg), DomainError);
  CHECK(series::polylog_minus_half_from_mu(
            std::numeric_limits<double>::infinity(), cfg) == 0.0);
}
