// fock.hpp -- dense operators on truncated Fock spaces and the entropy /
// fidelity primitives built on them.  All entropies are in bits.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "horizon/errors.hpp"

namespace horizon::fock {

// Numerical tolerances used across the module.
inline constexpr double kHermitianDefectLimit = 1e-9;   // hard structural error
inline constexpr double kEigenvalueClip = 1e-15;        // treat as exact zero
inline constexpr double kNegativeEigenvalueLimit = 1e-10;
inline constexpr double kDiagonalTolerance = 1e-10;     // co-diagonal shortcut
inline constexpr double kProbabilitySumTolerance = 1e-9;

// Controls adaptive truncation of Fock bases and caps dense dimensions.
struct TruncationPolicy {
  double tail_epsilon = 1e-14;  // admissible neglected tail probability mass
  int max_dim = 4096;           // cap on any single stored dimension

  void validate() const;
};

// Dense Hermitian operator on a tensor product of finite-dimensional factors.
// `factors` records the subsystem dimensions, e.g. {2, N} for qubit x Fock.
class FockDensityMatrix {
 public:
  FockDensityMatrix(std::vector<int> factors, Eigen::MatrixXcd entries);

  static FockDensityMatrix diagonal(std::vector<int> factors,
                                    const Eigen::VectorXd& populations);
  static FockDensityMatrix pure(std::vector<int> factors,
                                const Eigen::VectorXcd& amplitudes);

  const std::vector<int>& factors() const { return factors_; }
  int total_dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  std::complex<double> entry(int i, int j) const { return entries_(i, j); }

  double trace_real() const { return entries_.trace().real(); }
  // max_ij |m(i,j) - conj(m(j,i))|
  double hermiticity_defect() const;
  bool is_diagonal(double tolerance = kDiagonalTolerance) const;

  // Checks Hermiticity, unit trace within the policy's tail bound, and
  // non-negativity of the diagonal.  Throws StructuralError / InputError.
  void require_valid(const TruncationPolicy& policy = {}) const;

 private:
  std::vector<int> factors_;
  Eigen::MatrixXcd entries_;
};

// Pure state vector carrying the same factor bookkeeping.  Amplitudes are
// real: every state prepared in this artifact has non-negative amplitudes
// once global phases are dropped.
struct FockStateVector {
  std::vector<int> factors;
  Eigen::VectorXd amplitudes;

  int total_dim() const { return static_cast<int>(amplitudes.size()); }
  double norm_sq() const { return amplitudes.squaredNorm(); }
  FockDensityMatrix density() const;
};

// Eigenvalues sorted in descending order.
struct SpectralResult {
  std::vector<double> eigenvalues;

  double sum() const;
};

// Full spectrum of a Hermitian operator.  Throws StructuralError if the
// Hermiticity defect exceeds kHermitianDefectLimit.
SpectralResult hermitian_eigenvalues(const FockDensityMatrix& m);

// S(rho) = -sum_i lambda_i lb(lambda_i).  Eigenvalues below kEigenvalueClip
// are dropped; an eigenvalue below -kNegativeEigenvalueLimit raises
// PositivityError.
double von_neumann_entropy(const FockDensityMatrix& m);

// H(p) = -sum_i p_i lb(p_i) for a probability vector (validated).
double shannon_entropy(std::span<const double> probabilities);

// Shannon entropy of {p, 1-p}; p must lie in [0, 1].
double binary_entropy(double p);

// Trace out every factor not listed in `keep` (indices into factors(),
// sorted ascending, duplicates rejected).  Trace is preserved exactly.
FockDensityMatrix partial_trace(const FockDensityMatrix& m,
                                const std::vector<int>& keep);

// Kronecker product; factor lists concatenate.  Throws CapacityError if the
// combined dimension exceeds policy.max_dim.
FockDensityMatrix tensor_product(const FockDensityMatrix& a,
                                 const FockDensityMatrix& b,
                                 const TruncationPolicy& policy = {});

// Uhlmann fidelity F = (tr sqrt(sqrt(a) b sqrt(a)))^2.  When both operators
// are diagonal in the stored basis the commuting shortcut
// F = (sum_i sqrt(p_i q_i))^2 is used instead; the two routes agree for
// commuting inputs.
double fidelity(const FockDensityMatrix& a, const FockDensityMatrix& b);

}  // namespace horizon::fock
