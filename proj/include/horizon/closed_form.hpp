// closed_form.hpp -- series evaluation of the channel quantities: logical-state
// fidelity, classical mutual information, quantum conditional entropy, and the
// derived capacities / coherent informations for both rail encodings.
//
// Every function sums the analytic series directly when the term budget
// allows and switches to a validated large-squeezing branch (continuum
// integral or asymptotic form) beyond that; limits at r -> 0 are returned
// analytically below SeriesConfig::r_min_analytic.
#pragma once

#include "horizon/series.hpp"
#include "horizon/unruh.hpp"

namespace horizon::closed_form {

using series::SeriesConfig;

// One evaluation point: all quantities in bits except fidelity.
struct ChannelQuantities {
  double fidelity = 0.0;
  double mutual_info_bits = 0.0;
  double conditional_entropy_bits = 0.0;
  double capacity_bits = 0.0;
  double coherent_info_bits = 0.0;
  double source_entropy_bits = 0.0;
};

struct DerivedOptions {
  // When set, the quantum capacity is maximized over alpha_sq instead of
  // being reported at the symmetric point 1/2.
  bool maximize_coherent_info = false;
};

struct CapacityResult {
  double capacity_bits = 0.0;
  double argmax_alpha_sq = 0.5;
};

// Fidelity between the channel outputs for logical 0 and logical 1.
// Single rail: F = Li_{-1/2}(tanh^2 r)^2 / (sinh^2 r cosh^4 r); dual rail
// is the square of the single-rail value.
double fidelity_series(const unruh::SqueezingParameter& r,
                       unruh::Encoding encoding, const SeriesConfig& cfg = {});

// Mutual information (bits) of the classical single-rail channel.
double mi_classical_single(double alpha_sq, const unruh::SqueezingParameter& r,
                           const SeriesConfig& cfg = {});

// Classical dual rail at the symmetric preparation alpha_sq = 1/2.
double mi_classical_dual(const unruh::SqueezingParameter& r,
                         const SeriesConfig& cfg = {});

// Classical dual rail at arbitrary alpha_sq (two-dimensional series; only
// practical at moderate r -- throws ConvergenceError past the term budget).
double mi_classical_dual_general(double alpha_sq,
                                 const unruh::SqueezingParameter& r,
                                 const SeriesConfig& cfg = {});

// Conditional entropy S(A|R) (bits, <= 0) of the quantum single-rail channel.
double ce_quantum_single(double alpha_sq, const unruh::SqueezingParameter& r,
                         const SeriesConfig& cfg = {});

// Quantum dual rail at alpha_sq = 1/2.
double ce_quantum_dual(const unruh::SqueezingParameter& r,
                       const SeriesConfig& cfg = {});

// Quantum dual rail at arbitrary alpha_sq (same reach caveat as the
// classical general form).
double ce_quantum_dual_general(double alpha_sq,
                               const unruh::SqueezingParameter& r,
                               const SeriesConfig& cfg = {});

// Classical capacity: maximum mutual information over alpha_sq.  Single rail
// uses a golden-section search; dual rail is exactly symmetric in the logical
// labels, so alpha_sq = 1/2 is optimal.
CapacityResult classical_capacity(unruh::Encoding encoding,
                                  const unruh::SqueezingParameter& r,
                                  const SeriesConfig& cfg = {});

// Quantum capacity figure of merit: the coherent information -S(A|R),
// reported at alpha_sq = 1/2 (the plotted convention) unless maximize is set.
CapacityResult quantum_capacity(unruh::Encoding encoding,
                                const unruh::SqueezingParameter& r,
                                const SeriesConfig& cfg = {},
                                bool maximize = false);

// Fills every field for one (preparation, encoding, protocol, r) point.
// Classical rows: MI from the series, CE = S(A) - MI; quantum rows: CE from
// the series, MI = S(A) - CE.  capacity_bits is the channel-level optimum;
// coherent_info_bits is -CE at the row's own preparation.
ChannelQuantities derived_quantities(const unruh::Preparation& prep,
                                     unruh::Encoding encoding,
                                     unruh::Protocol protocol,
                                     const unruh::SqueezingParameter& r,
                                     const SeriesConfig& cfg = {},
                                     const DerivedOptions& options = {});

}  // namespace horizon::closed_form
