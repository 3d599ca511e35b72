#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "horizon/fock.hpp"

using namespace horizon;

namespace {

fock::FockDensityMatrix diag2(double p, double q) {
  Eigen::VectorXd pops(2);
  pops << p, q;
  return fock::FockDensityMatrix::diagonal({2}, pops);
}

// Deterministic pseudo-random amplitudes (raw engine output, no
// distribution objects, so the values are identical on every platform).
Eigen::VectorXcd random_state(int dim, unsigned seed) {
  std::mt19937 gen(seed);
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = static_cast<double>(gen()) / 4294967296.0 - 0.5;
    const double im = static_cast<double>(gen()) / 4294967296.0 - 0.5;
    v(i) = std::complex<double>(re, im);
  }
  v.normalize();
  return v;
}

}  // namespace

TEST_CASE("truncation policy validation") {
  fock::TruncationPolicy ok;
  CHECK_NOTHROW(ok.validate());
  fock::TruncationPolicy bad_tail{0.0, 64};
  CHECK_THROWS_AS(bad_tail.validate(), InputError);
  fock::TruncationPolicy bad_dim{1e-14, 1};
  CHECK_THROWS_AS(bad_dim.validate(), InputError);
}

TEST_CASE("hermitian eigenvalues on small analytic cases") {
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  const auto spec_id =
      fock::hermitian_eigenvalues(fock::FockDensityMatrix({2}, id));
  REQUIRE(spec_id.eigenvalues.size() == 2);
  CHECK(spec_id.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(spec_id.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));

  const auto spec_diag = fock::hermitian_eigenvalues(diag2(0.25, 0.75));
  CHECK(spec_diag.eigenvalues[0] == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(spec_diag.eigenvalues[1] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(spec_diag.sum() == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::MatrixXcd proj(2, 2);
  proj << 0.5, 0.5, 0.5, 0.5;
  const auto spec_proj =
      fock::hermitian_eigenvalues(fock::FockDensityMatrix({2}, proj));
  CHECK(spec_proj.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(spec_proj.eigenvalues[1]) < 1e-12);
}

TEST_CASE("hermitian eigenvalues rejects non-Hermitian input") {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS(fock::hermitian_eigenvalues(fock::FockDensityMatrix({2}, m)),
                  StructuralError);
}

TEST_CASE("von Neumann entropy") {
  Eigen::VectorXcd pure(3);
  pure << 1.0, 0.0, 0.0;
  CHECK(fock::von_neumann_entropy(fock::FockDensityMatrix::pure({3}, pure)) ==
        doctest::Approx(0.0).epsilon(1e-12));

  CHECK(fock::von_neumann_entropy(diag2(0.5, 0.5)) ==
        doctest::Approx(1.0).epsilon(1e-13));

  // Geometric populations 2^-(n+1): entropy is exactly 2 bits in the limit.
  const int n = 60;
  Eigen::VectorXd pops(n);
  for (int i = 0; i < n; ++i) pops(i) = std::pow(2.0, -(i + 1.0));
  CHECK(fock::von_neumann_entropy(fock::FockDensityMatrix::diagonal({n}, pops)) ==
        doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(fock::von_neumann_entropy(diag2(1.1, -0.1)),
                  PositivityError);
}

TEST_CASE("shannon and binary entropy") {
  const std::vector<double> sure{1.0, 0.0};
  CHECK(fock::shannon_entropy(sure) == doctest::Approx(0.0));
  const std::vector<double> fair{0.5, 0.5};
  CHECK(fock::shannon_entropy(fair) == doctest::Approx(1.0).epsilon(1e-14));
  const std::vector<double> skew{0.25, 0.75};
  CHECK(fock::shannon_entropy(skew) ==
        doctest::Approx(2.0 - 0.75 * std::log2(3.0)).epsilon(1e-14));

  const std::vector<double> unnormalized{0.4, 0.4};
  CHECK_THROWS_AS(fock::shannon_entropy(unnormalized), InputError);
  const std::vector<double> negative{1.2, -0.2};
  CHECK_THROWS_AS(fock::shannon_entropy(negative), InputError);

  CHECK(fock::binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fock::binary_entropy(0.0) == doctest::Approx(0.0));
  CHECK(fock::binary_entropy(1.0) == doctest::Approx(0.0));
  CHECK(fock::binary_entropy(0.25) ==
        doctest::Approx(2.0 - 0.75 * std::log2(3.0)).epsilon(1e-14));
  CHECK_THROWS_AS(fock::binary_entropy(-0.01), InputError);
  CHECK_THROWS_AS(fock::binary_entropy(1.01), InputError);

  // Shannon matches von Neumann on diagonal operators.
  const std::vector<double> probs{0.1, 0.2, 0.3, 0.4};
  Eigen::VectorXd pops(4);
  for (int i = 0; i < 4; ++i) pops(i) = probs[i];
  CHECK(fock::shannon_entropy(probs) ==
        doctest::Approx(fock::von_neumann_entropy(
                            fock::FockDensityMatrix::diagonal({4}, pops)))
            .epsilon(1e-10));
}

TEST_CASE("partial trace") {
  Eigen::VectorXcd bell(4);
  bell << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  const auto rho = fock::FockDensityMatrix::pure({2, 2}, bell);

  const auto left = fock::partial_trace(rho, {0});
  REQUIRE(left.total_dim() == 2);
  CHECK(left.entry(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(left.entry(1, 1).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(left.entry(0, 1)) < 1e-14);
  CHECK(left.trace_real() == doctest::Approx(1.0).epsilon(1e-14));

  // Product state: tracing the second factor returns the first exactly.
  Eigen::MatrixXcd sigma(2, 2);
  sigma << 0.7, std::complex<double>(0.1, 0.2),
      std::complex<double>(0.1, -0.2), 0.3;
  Eigen::VectorXd tau_pops(3);
  tau_pops << 0.5, 0.3, 0.2;
  const auto product = fock::tensor_product(
      fock::FockDensityMatrix({2}, sigma),
      fock::FockDensityMatrix::diagonal({3}, tau_pops));
  const auto recovered = fock::partial_trace(product, {0});
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(recovered.entry(i, j) - sigma(i, j)) < 1e-14);
    }
  }

  CHECK_THROWS_AS(fock::partial_trace(rho, {}), InputError);
  CHECK_THROWS_AS(fock::partial_trace(rho, {2}), InputError);
  CHECK_THROWS_AS(fock::partial_trace(rho, std::vector<int>{0, 0}),
                  InputError);
}

TEST_CASE("bipartite marginals of a pure state share their entropy") {
  for (unsigned seed : {7u, 21u, 1234u}) {
    const auto psi = random_state(4 * 8, seed);
    const auto rho = fock::FockDensityMatrix::pure({4, 8}, psi);
    const double s_left =
        fock::von_neumann_entropy(fock::partial_trace(rho, {0}));
    const double s_right =
        fock::von_neumann_entropy(fock::partial_trace(rho, {1}));
    CHECK(std::fabs(s_left - s_right) < 1e-8);
  }
}

TEST_CASE("tensor product") {
  const auto a = diag2(1.0, 0.0);
  const auto ab = fock::tensor_product(a, a);
  REQUIRE(ab.total_dim() == 4);
  CHECK(ab.entry(0, 0).real() == doctest::Approx(1.0));
  for (int i = 1; i < 4; ++i) CHECK(std::abs(ab.entry(i, i)) < 1e-15);
  CHECK(ab.factors() == std::vector<int>{2, 2});

  const auto b = diag2(0.25, 0.75);
  CHECK(fock::tensor_product(a, b).trace_real() ==
        doctest::Approx(a.trace_real() * b.trace_real()).epsilon(1e-13));

  // Entropy additivity.
  const auto c = diag2(0.5, 0.5);
  CHECK(fock::von_neumann_entropy(fock::tensor_product(b, c)) ==
        doctest::Approx(fock::von_neumann_entropy(b) +
                        fock::von_neumann_entropy(c))
            .epsilon(1e-10));

  Eigen::VectorXd wide = Eigen::VectorXd::Constant(70, 1.0 / 70.0);
  const auto big = fock::FockDensityMatrix::diagonal({70}, wide);
  fock::TruncationPolicy tight{1e-14, 4096};
  CHECK_THROWS_AS(fock::tensor_product(big, big, tight), CapacityError);
}

TEST_CASE("fidelity") {
  const auto rho = diag2(0.25, 0.75);
  CHECK(fock::fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::VectorXcd e0(2), e1(2), plus(2);
  e0 << 1.0, 0.0;
  e1 << 0.0, 1.0;
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const auto p0 = fock::FockDensityMatrix::pure({2}, e0);
  const auto p1 = fock::FockDensityMatrix::pure({2}, e1);
  const auto pp = fock::FockDensityMatrix::pure({2}, plus);
  CHECK(fock::fidelity(p0, p1) == doctest::Approx(0.0).epsilon(1e-12));
  // Non-commuting pure pair: F = |<0|+>|^2 = 1/2.
  CHECK(fock::fidelity(p0, pp) == doctest::Approx(0.5).epsilon(1e-10));

  CHECK(fock::fidelity(diag2(0.5, 0.5), diag2(1.0, 0.0)) ==
        doctest::Approx(0.5).epsilon(1e-12));

  // Symmetry on a non-commuting pair.
  CHECK(std::fabs(fock::fidelity(p0, pp) - fock::fidelity(pp, p0)) < 1e-10);

  // Commuting shortcut equals the analytic (sum sqrt(p q))^2.
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  const std::vector<double> q{0.4, 0.3, 0.2, 0.1};
  Eigen::VectorXd vp(4), vq(4);
  double overlap = 0.0;
  for (int i = 0; i < 4; ++i) {
    vp(i) = p[i];
    vq(i) = q[i];
    overlap += std::sqrt(p[i] * q[i]);
  }
  CHECK(fock::fidelity(fock::FockDensityMatrix::diagonal({4}, vp),
                       fock::FockDensityMatrix::diagonal({4}, vq)) ==
        doctest::Approx(overlap * overlap).epsilon(1e-12));

  CHECK_THROWS_AS(
      fock::fidelity(rho, fock::FockDensityMatrix::diagonal(
                              {3}, Eigen::VectorXd::Constant(3, 1.0 / 3.0))),
      InputError);
}

TEST_CASE("density matrix validation") {
  const auto ok = diag2(0.5, 0.5);
  CHECK_NOTHROW(ok.require_valid());
  CHECK(ok.is_diagonal());

  Eigen::MatrixXcd herm_defect(2, 2);
  herm_defect << 0.5, std::complex<double>(0.0, 0.1),
      std::complex<double>(0.0, 0.1), 0.5;
  CHECK_THROWS_AS(
      fock::FockDensityMatrix({2}, herm_defect).require_valid(),
      StructuralError);

  CHECK_THROWS_AS(diag2(0.7, 0.7).require_valid(), InputError);
  CHECK_THROWS_AS(diag2(1.5, -0.5).require_valid(), PositivityError);
}
