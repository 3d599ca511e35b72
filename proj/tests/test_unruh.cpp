#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "horizon/unruh.hpp"

using namespace horizon;
using unruh::AccelerationSpec;
using unruh::Encoding;
using unruh::Preparation;
using unruh::Protocol;
using unruh::SchwarzschildSpec;
using unruh::SqueezingParameter;

TEST_CASE("squeezing from acceleration") {
  // a = pi, omega = 1: r = atanh(exp(-1)).
  CHECK(unruh::squeezing_from_acceleration({std::acos(-1.0), 1.0}).r ==
        doctest::Approx(std::atanh(std::exp(-1.0))).epsilon(1e-14));
  CHECK(unruh::squeezing_from_acceleration({std::acos(-1.0), 1.0}).r ==
        doctest::Approx(0.38596841645265236).epsilon(1e-12));

  // Monotone increasing in a; small a gives vanishing r, huge a large r.
  double prev = -1.0;
  for (double a : {0.05, 0.2, 1.0, 3.0, 10.0, 100.0}) {
    const double r = unruh::squeezing_from_acceleration({a, 1.0}).r;
    CHECK(r > prev);
    prev = r;
  }
  CHECK(unruh::squeezing_from_acceleration({1e-3, 1.0}).r < 1e-100);
  CHECK(unruh::squeezing_from_acceleration({1e6, 1.0}).r > 5.0);

  CHECK_THROWS_AS(unruh::squeezing_from_acceleration({0.0, 1.0}),
                  DomainError);
  CHECK_THROWS_AS(unruh::squeezing_from_acceleration({-1.0, 1.0}),
                  DomainError);
  CHECK_THROWS_AS(unruh::squeezing_from_acceleration({1.0, 0.0}),
                  DomainError);
}

TEST_CASE("acceleration round trip") {
  for (double r = 0.05; r <= 5.0 + 1e-12; r += 0.152) {
    const AccelerationSpec spec =
        unruh::acceleration_from_squeezing(SqueezingParameter{r}, 1.3);
    const double back = unruh::squeezing_from_acceleration(spec).r;
    CHECK(std::fabs(back - r) < 1e-10);
  }
  // Inertial limit convention.
  CHECK(unruh::acceleration_from_squeezing(SqueezingParameter{0.0}).a == 0.0);
}

TEST_CASE("acceleration from Schwarzschild geometry") {
  const AccelerationSpec hover =
      unruh::acceleration_from_schwarzschild({1.0, 4.0});
  CHECK(hover.a == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-14));

  // Far from the hole the acceleration tends to 1 / (4M).
  CHECK(unruh::acceleration_from_schwarzschild({1.0, 1e12}).a ==
        doctest::Approx(0.25).epsilon(1e-6));

  CHECK_THROWS_AS(unruh::acceleration_from_schwarzschild({1.0, 2.0}),
                  DomainError);
  CHECK_THROWS_AS(unruh::acceleration_from_schwarzschild({1.0, 1.5}),
                  DomainError);
  CHECK_THROWS_AS(unruh::acceleration_from_schwarzschild({0.0, 10.0}),
                  DomainError);
  CHECK(SchwarzschildSpec{3.0, 7.0}.schwarzschild_radius() ==
        doctest::Approx(6.0));
}

TEST_CASE("squeezed vacuum vector") {
  const int n = 24;
  const auto zero = unruh::squeezed_vacuum_vector(SqueezingParameter{0.0}, n);
  CHECK(zero.factors == std::vector<int>{n, n});
  CHECK(zero.amplitudes(0) == doctest::Approx(1.0));
  CHECK(zero.norm_sq() == doctest::Approx(1.0));

  // tanh^2 r = 1/2: amplitudes sqrt(2^-(n+1)) on |n, n>.
  const double r_half = std::atanh(1.0 / std::sqrt(2.0));
  const auto half =
      unruh::squeezed_vacuum_vector(SqueezingParameter{r_half}, n);
  for (int k = 0; k < 6; ++k) {
    CHECK(half.amplitudes(k * n + k) ==
          doctest::Approx(std::sqrt(std::pow(2.0, -(k + 1.0))))
              .epsilon(1e-12));
  }

  // norm^2 = 1 - tanh^{2N} r exactly.
  const double r = 1.1;
  const auto vec = unruh::squeezed_vacuum_vector(SqueezingParameter{r}, n);
  CHECK(vec.norm_sq() ==
        doctest::Approx(1.0 - std::pow(std::tanh(r), 2.0 * n))
            .epsilon(1e-12));

  CHECK_THROWS_AS(unruh::squeezed_vacuum_vector(SqueezingParameter{1.0}, 1),
                  InputError);
  CHECK_THROWS_AS(unruh::squeezed_vacuum_vector(SqueezingParameter{1.0}, 8192),
                  CapacityError);
}

TEST_CASE("squeezed one photon vector") {
  const int n = 24;
  const auto zero =
      unruh::squeezed_one_photon_vector(SqueezingParameter{0.0}, n);
  CHECK(zero.amplitudes(1 * n + 0) == doctest::Approx(1.0));
  CHECK(zero.norm_sq() == doctest::Approx(1.0));

  const double r = 0.9;
  const auto one = unruh::squeezed_one_photon_vector(SqueezingParameter{r}, 64);
  CHECK(one.norm_sq() == doctest::Approx(1.0).epsilon(1e-10));

  // Disjoint Fock support in the first factor: exact orthogonality.
  const auto vac = unruh::squeezed_vacuum_vector(SqueezingParameter{r}, 64);
  CHECK(vac.amplitudes.dot(one.amplitudes) == 0.0);
}

TEST_CASE("channel element") {
  const int n = 32;
  const double r_half = std::atanh(1.0 / std::sqrt(2.0));
  const auto e00 =
      unruh::channel_element(0, 0, SqueezingParameter{r_half}, n);
  for (int k = 0; k < 5; ++k) {
    CHECK(e00(k, k) ==
          doctest::Approx(std::pow(2.0, -(k + 1.0))).epsilon(1e-12));
  }
  CHECK(e00.isDiagonal(1e-14));

  // Trace preservation within 10x the truncation tail for j = k.
  for (double r : {0.2, 0.6, 1.0, 1.6, 2.2}) {
    const fock::TruncationPolicy policy;
    const int dim = unruh::adaptive_fock_dim(SqueezingParameter{r}, policy);
    for (int j : {0, 1}) {
      const auto ejj =
          unruh::channel_element(j, j, SqueezingParameter{r}, dim);
      CHECK(std::fabs(ejj.trace() - 1.0) < 10.0 * policy.tail_epsilon);
    }
  }

  // Zero squeezing reduces to the identity channel on the logical elements.
  const auto e01 = unruh::channel_element(0, 1, SqueezingParameter{0.0}, n);
  CHECK(e01(0, 1) == doctest::Approx(1.0));
  CHECK(e01.cwiseAbs().sum() == doctest::Approx(1.0));

  CHECK_THROWS_AS(unruh::channel_element(2, 0, SqueezingParameter{1.0}, n),
                  InputError);
  CHECK_THROWS_AS(unruh::channel_element(0, -1, SqueezingParameter{1.0}, n),
                  InputError);
}

TEST_CASE("channel elements match the mode-transformation outer products") {
  // Tracing the partner mode out of the Eq.-style pure vectors must
  // reproduce the matrix-element map entrywise.
  const double r = 0.8;
  const int n = 48;
  const auto vac = unruh::squeezed_vacuum_vector(SqueezingParameter{r}, n);
  const auto one = unruh::squeezed_one_photon_vector(SqueezingParameter{r}, n);

  const auto rho_vac = fock::partial_trace(vac.density(), {0});
  const auto rho_one = fock::partial_trace(one.density(), {0});
  const auto e00 = unruh::channel_element(0, 0, SqueezingParameter{r}, n);
  const auto e11 = unruh::channel_element(1, 1, SqueezingParameter{r}, n);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs(rho_vac.entry(i, j) - e00(i, j)));
      worst = std::max(worst, std::abs(rho_one.entry(i, j) - e11(i, j)));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("adaptive fock dimension") {
  CHECK(unruh::adaptive_fock_dim(SqueezingParameter{0.0}) == 4);
  int prev = 0;
  for (double r : {0.3, 0.8, 1.4, 2.0}) {
    const int dim = unruh::adaptive_fock_dim(SqueezingParameter{r});
    CHECK(dim >= prev);
    prev = dim;
    // One-photon tail bound honored: T^N (1 + N(1-T)) <= tail_epsilon.
    const double t = std::pow(std::tanh(r), 2.0);
    const double tail =
        std::exp(dim * std::log(t) + std::log1p(dim * (1.0 - t)));
    CHECK(tail <= 1e-14 * (1.0 + 1e-9));
  }
  fock::TruncationPolicy capped{1e-14, 64};
  CHECK(unruh::adaptive_fock_dim(SqueezingParameter{3.0}, capped) == 64);
}

TEST_CASE("joint state structure") {
  const fock::TruncationPolicy policy;

  // r = 0, quantum single rail: pure maximally entangled state.
  {
    const auto rho = unruh::joint_state(Preparation{0.5},
                                        Encoding::single_rail,
                                        Protocol::quantum,
                                        SqueezingParameter{0.0}, 6, policy);
    CHECK(rho.factors() == std::vector<int>{2, 6});
    CHECK(fock::von_neumann_entropy(rho) == doctest::Approx(0.0).epsilon(1e-10));
    const auto alice = fock::partial_trace(rho, {0});
    CHECK(fock::von_neumann_entropy(alice) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  // r = 0, classical: perfectly correlated bits, MI = 1.
  for (Encoding enc : {Encoding::single_rail, Encoding::dual_rail}) {
    const auto rho =
        unruh::joint_state(Preparation{0.5}, enc, Protocol::classical,
                           SqueezingParameter{0.0}, 4, policy);
    const auto a = fock::partial_trace(rho, {0});
    std::vector<int> rob_keep;
    for (std::size_t i = 1; i < rho.factors().size(); ++i) {
      rob_keep.push_back(static_cast<int>(i));
    }
    const auto rob = fock::partial_trace(rho, rob_keep);
    const double mi = fock::von_neumann_entropy(a) +
                      fock::von_neumann_entropy(rob) -
                      fock::von_neumann_entropy(rho);
    CHECK(mi == doctest::Approx(1.0).epsilon(1e-10));
  }

  // Alice's marginal is diag(alpha_sq, beta_sq) at any squeezing.
  for (Encoding enc : {Encoding::single_rail, Encoding::dual_rail}) {
    for (Protocol proto : {Protocol::classical, Protocol::quantum}) {
      const int dim = enc == Encoding::single_rail ? 40 : 32;
      const auto rho = unruh::joint_state(Preparation{0.3}, enc, proto,
                                          SqueezingParameter{0.7}, dim);
      const auto alice = fock::partial_trace(rho, {0});
      CHECK(std::abs(alice.entry(0, 0).real() - 0.3) < 1e-10);
      CHECK(std::abs(alice.entry(1, 1).real() - 0.7) < 1e-10);
      CHECK(std::abs(alice.entry(0, 1)) < 1e-12);
    }
  }
}

TEST_CASE("joint state is a valid density matrix across the grid") {
  for (double r : {0.3, 1.0}) {
    for (Encoding enc : {Encoding::single_rail, Encoding::dual_rail}) {
      for (Protocol proto : {Protocol::classical, Protocol::quantum}) {
        const fock::TruncationPolicy policy;
        int dim = unruh::adaptive_fock_dim(SqueezingParameter{r}, policy);
        if (enc == Encoding::dual_rail) dim = std::min(dim, 40);
        fock::TruncationPolicy check{1e-6, 4096};
        const auto rho =
            unruh::joint_state(Preparation{0.4}, enc, proto,
                               SqueezingParameter{r}, dim, check);
        CHECK_NOTHROW(rho.require_valid(check));
        const auto spec = fock::hermitian_eigenvalues(rho);
        CHECK(spec.eigenvalues.back() > -1e-10);
      }
    }
  }
}

TEST_CASE("joint state dimension guards") {
  CHECK_THROWS_AS(
      unruh::joint_state(Preparation{0.5}, Encoding::dual_rail,
                         Protocol::quantum, SqueezingParameter{1.0}, 2000),
      CapacityError);
  CHECK_THROWS_AS(
      unruh::joint_state(Preparation{0.5}, Encoding::single_rail,
                         Protocol::quantum, SqueezingParameter{1.0}, 1),
      InputError);
  CHECK_THROWS_AS(unruh::joint_state(Preparation{1.5}, Encoding::single_rail,
                                     Protocol::quantum,
                                     SqueezingParameter{1.0}, 8),
                  DomainError);
  CHECK_THROWS_AS(unruh::joint_state(Preparation{0.5}, Encoding::single_rail,
                                     Protocol::quantum,
                                     SqueezingParameter{-0.1}, 8),
                  DomainError);
}

TEST_CASE("encoding and protocol names") {
  CHECK(unruh::to_string(Encoding::single_rail) == "single_rail");
  CHECK(unruh::to_string(Encoding::dual_rail) == "dual_rail");
  CHECK(unruh::to_string(Protocol::classical) == "classical");
  CHECK(unruh::to_string(Protocol::quantum) == "quantum");
  CHECK(unruh::encoding_from_string("single") == Encoding::single_rail);
  CHECK(unruh::encoding_from_string("dual_rail") == Encoding::dual_rail);
  CHECK(unruh::protocol_from_string("quantum") == Protocol::quantum);
  CHECK_THROWS_AS(unruh::encoding_from_string("triple"), InputError);
  CHECK_THROWS_AS(unruh::protocol_from_string(""), InputError);
}
