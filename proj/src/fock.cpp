#include "horizon/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace horizon::fock {

namespace {

int product_of(const std::vector<int>& factors) {
  long long p = 1;
  for (int f : factors) {
    if (f <= 0) throw InputError("factor dimensions must be positive");
    p *= f;
    if (p > (1LL << 30)) throw CapacityError("factor product overflows");
  }
  return static_cast<int>(p);
}

double xlb(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace

void TruncationPolicy::validate() const {
  if (!(tail_epsilon > 0.0) || tail_epsilon >= 1.0)
    throw InputError("tail_epsilon must lie in (0, 1)");
  if (max_dim < 2) throw InputError("max_dim must be at least 2");
}

FockDensityMatrix::FockDensityMatrix(std::vector<int> factors,
                                     Eigen::MatrixXcd entries)
    : factors_(std::move(factors)), entries_(std::move(entries)) {
  const int dim = product_of(factors_);
  if (entries_.rows() != dim || entries_.cols() != dim) {
    std::ostringstream os;
    os << "entry matrix is " << entries_.rows() << "x" << entries_.cols()
       << " but factors multiply to " << dim;
    throw InputError(os.str());
  }
}

FockDensityMatrix FockDensityMatrix::diagonal(
    std::vector<int> factors, const Eigen::VectorXd& populations) {
  Eigen::MatrixXcd m =
      populations.cast<std::complex<double>>().asDiagonal();
  return FockDensityMatrix(std::move(factors), std::move(m));
}

FockDensityMatrix FockDensityMatrix::pure(std::vector<int> factors,
                                          const Eigen::VectorXcd& amplitudes) {
  Eigen::MatrixXcd m = amplitudes * amplitudes.adjoint();
  return FockDensityMatrix(std::move(factors), std::move(m));
}

double FockDensityMatrix::hermiticity_defect() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

bool FockDensityMatrix::is_diagonal(double tolerance) const {
  const int n = total_dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && std::abs(entries_(i, j)) > tolerance) return false;
  return true;
}

void FockDensityMatrix::require_valid(const TruncationPolicy& policy) const {
  policy.validate();
  if (hermiticity_defect() > 1e-12)
    throw StructuralError("density matrix is not Hermitian");
  const double deficit = 1.0 - trace_real();
  // Allow the declared truncation tail plus rounding headroom.
  if (std::abs(deficit) > 100.0 * policy.tail_epsilon + 1e-12) {
    std::ostringstream os;
    os << "trace deviates from 1 by " << deficit;
    throw InputError(os.str());
  }
  for (int i = 0; i < total_dim(); ++i)
    if (entries_(i, i).real() < -kNegativeEigenvalueLimit)
      throw PositivityError("negative diagonal population");
}

FockDensityMatrix FockStateVector::density() const {
  Eigen::VectorXcd amp = amplitudes.cast<std::complex<double>>();
  return FockDensityMatrix::pure(factors, amp);
}

double SpectralResult::sum() const {
  return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
}

SpectralResult hermitian_eigenvalues(const FockDensityMatrix& m) {
  if (m.hermiticity_defect() > kHermitianDefectLimit)
    throw StructuralError("operator is not Hermitian within 1e-9");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      m.entries(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw StructuralError("eigenvalue iteration failed to converge");
  SpectralResult out;
  out.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + m.total_dim());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            std::greater<double>());
  return out;
}

double von_neumann_entropy(const FockDensityMatrix& m) {
  const SpectralResult spec = hermitian_eigenvalues(m);
  double s = 0.0;
  for (double lambda : spec.eigenvalues) {
    if (lambda < -kNegativeEigenvalueLimit)
      throw PositivityError("density matrix has a negative eigenvalue");
    if (lambda >= kEigenvalueClip) s -= xlb(lambda);
  }
  return s;
}

double shannon_entropy(std::span<const double> probabilities) {
  double sum = 0.0;
  double s = 0.0;
  for (double p : probabilities) {
    if (p < -kEigenvalueClip)
      throw InputError("probability entries must be non-negative");
    if (p > 0.0) {
      sum += p;
      s -= xlb(p);
    }
  }
  if (std::abs(sum - 1.0) > kProbabilitySumTolerance)
    throw InputError("probability vector does not sum to 1");
  return s;
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw InputError("binary_entropy needs p in [0, 1]");
  return -xlb(p) - xlb(1.0 - p);
}

FockDensityMatrix partial_trace(const FockDensityMatrix& m,
                                const std::vector<int>& keep) {
  const auto& factors = m.factors();
  const int k = static_cast<int>(factors.size());
  if (keep.empty()) throw InputError("keep set must not be empty");
  if (!std::is_sorted(keep.begin(), keep.end()) ||
      std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw InputError("keep indices must be sorted and unique");
  for (int idx : keep)
    if (idx < 0 || idx >= k) throw InputError("keep index out of range");

  // Strides of each factor in the row-major multi-index.
  std::vector<long long> stride(k, 1);
  for (int i = k - 2; i >= 0; --i) stride[i] = stride[i + 1] * factors[i + 1];

  std::vector<int> traced;
  for (int i = 0; i < k; ++i)
    if (!std::binary_search(keep.begin(), keep.end(), i)) traced.push_back(i);

  long long kept_dim = 1, traced_dim = 1;
  for (int i : keep) kept_dim *= factors[i];
  for (int i : traced) traced_dim *= factors[i];

  // Offset of a combined (kept, traced) multi-index in the full basis.
  auto offset = [&](long long kept_code, long long traced_code) {
    long long off = 0;
    for (int pos = static_cast<int>(keep.size()) - 1; pos >= 0; --pos) {
      const int f = factors[keep[pos]];
      off += (kept_code % f) * stride[keep[pos]];
      kept_code /= f;
    }
    for (int pos = static_cast<int>(traced.size()) - 1; pos >= 0; --pos) {
      const int f = factors[traced[pos]];
      off += (traced_code % f) * stride[traced[pos]];
      traced_code /= f;
    }
    return off;
  };

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kept_dim, kept_dim);
  for (long long i = 0; i < kept_dim; ++i)
    for (long long j = 0; j < kept_dim; ++j) {
      std::complex<double> acc = 0.0;
      for (long long t = 0; t < traced_dim; ++t)
        acc += m.entries()(offset(i, t), offset(j, t));
      out(i, j) = acc;
    }

  std::vector<int> kept_factors;
  for (int i : keep) kept_factors.push_back(factors[i]);
  return FockDensityMatrix(std::move(kept_factors), std::move(out));
}

FockDensityMatrix tensor_product(const FockDensityMatrix& a,
                                 const FockDensityMatrix& b,
                                 const TruncationPolicy& policy) {
  policy.validate();
  const long long dim =
      static_cast<long long>(a.total_dim()) * b.total_dim();
  if (dim > policy.max_dim) {
    std::ostringstream os;
    os << "tensor product dimension " << dim << " exceeds max_dim "
       << policy.max_dim;
    throw CapacityError(os.str());
  }
  const int da = a.total_dim(), db = b.total_dim();
  Eigen::MatrixXcd out(dim, dim);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a.entry(i, j) * b.entries();
  std::vector<int> factors = a.factors();
  factors.insert(factors.end(), b.factors().begin(), b.factors().end());
  return FockDensityMatrix(std::move(factors), std::move(out));
}

namespace {

// PSD square root via spectral decomposition; negative dust is clipped.
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success)
    throw StructuralError("eigenvalue iteration failed to converge");
  Eigen::VectorXd ev = solver.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] < -kNegativeEigenvalueLimit)
      throw PositivityError("fidelity input has a negative eigenvalue");
    ev[i] = ev[i] > 0.0 ? std::sqrt(ev[i]) : 0.0;
  }
  return solver.eigenvectors() * ev.asDiagonal() *
         solver.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const FockDensityMatrix& a, const FockDensityMatrix& b) {
  if (a.total_dim() != b.total_dim())
    throw InputError("fidelity requires equal dimensions");
  if (a.hermiticity_defect() > kHermitianDefectLimit ||
      b.hermiticity_defect() > kHermitianDefectLimit)
    throw StructuralError("fidelity inputs must be Hermitian");

  if (a.is_diagonal() && b.is_diagonal()) {
    double root_sum = 0.0;
    for (int i = 0; i < a.total_dim(); ++i) {
      const double p = std::max(a.entry(i, i).real(), 0.0);
      const double q = std::max(b.entry(i, i).real(), 0.0);
      root_sum += std::sqrt(p * q);
    }
    return root_sum * root_sum;
  }

  const Eigen::MatrixXcd ra = psd_sqrt(a.entries());
  const Eigen::MatrixXcd inner = ra * b.entries() * ra;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      inner, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw StructuralError("eigenvalue iteration failed to converge");
  double root_sum = 0.0;
  for (int i = 0; i < solver.eigenvalues().size(); ++i)
    root_sum += std::sqrt(std::max(solver.eigenvalues()[i], 0.0));
  return root_sum * root_sum;
}

}  // namespace horizon::fock
