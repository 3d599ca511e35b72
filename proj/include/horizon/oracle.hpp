// oracle.hpp -- brute-force reference pipeline.  Builds the tripartite
// sender/receiver/partner pure (or mixed) state explicitly from the
// mode-transformation amplitudes, partial-traces by grouping, eigensolves the
// resulting blocks, and derives every channel quantity from eigenvalues
// alone.  It shares only fockcore/series primitives with the closed-form
// path; none of the series formulas are used here.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "horizon/closed_form.hpp"
#include "horizon/fock.hpp"
#include "horizon/unruh.hpp"

namespace horizon::oracle {

// Von Neumann entropies (bits) of the four marginals of the global state.
struct OracleEntropies {
  double sender_bits = 0.0;       // S(rho_A)
  double receiver_bits = 0.0;     // S(rho_R)
  double joint_bits = 0.0;        // S(rho_AR)
  double environment_bits = 0.0;  // S of the traced-out partner modes
};

OracleEntropies oracle_entropies(const unruh::Preparation& prep,
                                 unruh::Encoding encoding,
                                 unruh::Protocol protocol,
                                 const unruh::SqueezingParameter& r,
                                 int fock_dim,
                                 const fock::TruncationPolicy& policy = {});

// Matrix fidelity between the channel outputs of logical 0 and logical 1.
double oracle_fidelity(unruh::Encoding encoding,
                       const unruh::SqueezingParameter& r, int fock_dim,
                       const fock::TruncationPolicy& policy = {});

// Full quantity set from the brute-force pipeline: MI = S_A + S_R - S_AR,
// CE = S_AR - S_R, capacity by scalar search over the oracle's own MI
// (classical single rail) or the symmetric-point evaluation otherwise.
closed_form::ChannelQuantities oracle_quantities(
    const unruh::Preparation& prep, unruh::Encoding encoding,
    unruh::Protocol protocol, const unruh::SqueezingParameter& r, int fock_dim,
    const fock::TruncationPolicy& policy = {});

struct VerificationPoint {
  double r = 0.0;
  double alpha_sq = 0.5;
  unruh::Encoding encoding = unruh::Encoding::single_rail;
  unruh::Protocol protocol = unruh::Protocol::classical;
};

struct VerificationReport {
  VerificationPoint point;
  int truncation_dim = 0;
  double tolerance = 0.0;
  // Absolute |closed form - oracle| per quantity (fidelity judged at
  // tolerance / 100, entropic quantities at tolerance).
  std::map<std::string, double> series_deltas;
  // Absolute |oracle(N) - oracle(min(2N, max_dim))| per quantity.
  std::map<std::string, double> doubling_deltas;
  bool passed = false;
};

// Runs both pipelines at an automatically chosen truncation and again at
// twice that, and compares.  Failures are reported, not thrown.
VerificationReport verify_point(const unruh::Preparation& prep,
                                unruh::Encoding encoding,
                                unruh::Protocol protocol,
                                const unruh::SqueezingParameter& r,
                                double tolerance,
                                const closed_form::SeriesConfig& cfg = {});

// r in {0.1, 0.25, 0.5, 1, 1.5, 2} x alpha_sq in {0.25, 0.5, 0.75} x all
// four channels, plus the r = 3 spot checks at the symmetric preparation.
std::vector<VerificationPoint> default_grid();

}  // namespace horizon::oracle
