// unruh.hpp -- the two-mode squeezing channel seen by a uniformly
// accelerated receiver, with single-rail and dual-rail qubit encodings.
//
// Conventions: hbar = c = G = 1 throughout; the receiver occupies the right
// Rindler wedge (single-mode approximation), the left-wedge partner is traced
// out; preparation phases are dropped, so only |alpha|^2 is stored and the
// quantum coherence block carries the real weight sqrt(alpha^2 (1-alpha^2)).
#pragma once

#include <Eigen/Dense>
#include <string>

#include "horizon/fock.hpp"

namespace horizon::unruh {

// Two-mode squeezing strength r >= 0; tanh(r) = exp(-pi omega / a).
struct SqueezingParameter {
  double r = 0.0;

  void validate() const;
};

// Proper acceleration a > 0 of the receiver and mode frequency omega > 0.
struct AccelerationSpec {
  double a = 0.0;
  double omega = 1.0;

  void validate() const;
};

// Static observer at areal radius `radius` outside a mass `mass` black hole.
struct SchwarzschildSpec {
  double mass = 0.0;
  double radius = 0.0;

  double schwarzschild_radius() const { return 2.0 * mass; }
  void validate() const;
};

// Input qubit diag(alpha_sq, 1 - alpha_sq); phases are not tracked.
struct Preparation {
  double alpha_sq = 0.5;

  double beta_sq() const { return 1.0 - alpha_sq; }
  void validate() const;
};

enum class Encoding { single_rail, dual_rail };
enum class Protocol { classical, quantum };

std::string to_string(Encoding e);
std::string to_string(Protocol p);
Encoding encoding_from_string(const std::string& s);
Protocol protocol_from_string(const std::string& s);

// r = atanh(exp(-pi omega / a)).
SqueezingParameter squeezing_from_acceleration(const AccelerationSpec& spec);

// Inverse map; r = 0 yields a = 0 (the inertial limit).
AccelerationSpec acceleration_from_squeezing(const SqueezingParameter& r,
                                             double omega = 1.0);

// a = 1 / (4 M sqrt(1 - R_s / R)) for a static observer at R > R_s = 2M.
AccelerationSpec acceleration_from_schwarzschild(const SchwarzschildSpec& spec,
                                                 double omega = 1.0);

// Smallest per-mode dimension N with neglected tail mass below
// policy.tail_epsilon for every channel output at this r, capped at
// policy.max_dim.
int adaptive_fock_dim(const SqueezingParameter& r,
                      const fock::TruncationPolicy& policy = {});

// Vacuum seen by the accelerated receiver: amplitudes tanh^n(r)/cosh(r) on
// |n, n> of (mode, partner-mode).  Norm^2 = 1 - tanh^{2N}(r).
fock::FockStateVector squeezed_vacuum_vector(
    const SqueezingParameter& r, int fock_dim,
    const fock::TruncationPolicy& policy = {});

// One-photon input: amplitudes tanh^n(r) sqrt(n+1)/cosh^2(r) on |n+1, n>.
fock::FockStateVector squeezed_one_photon_vector(
    const SqueezingParameter& r, int fock_dim,
    const fock::TruncationPolicy& policy = {});

// Receiver-side image of |j><k| (j, k in {0, 1}) under the channel:
//   sum_n tanh^{2n}(r) / cosh^{2+j+k}(r) (n+1)^{(j+k)/2} |n+j><n+k|,
// truncated to fock_dim x fock_dim.
Eigen::MatrixXd channel_element(int j, int k, const SqueezingParameter& r,
                                int fock_dim);

// Joint sender/receiver state rho_AR on qubit x Fock (single rail) or
// qubit x Fock x Fock (dual rail).  The classical protocol keeps only the
// populations (block-diagonal state); the quantum protocol adds the
// coherence blocks of the entangled preparation.  Dense: intended for
// moderate dimensions (guarded by policy.max_dim).
fock::FockDensityMatrix joint_state(const Preparation& prep, Encoding encoding,
                                    Protocol protocol,
                                    const SqueezingParameter& r, int fock_dim,
                                    const fock::TruncationPolicy& policy = {});

}  // namespace horizon::unruh
