#include "horizon/unruh.hpp"

#include <cmath>
#include <limits>

#include "horizon/errors.hpp"

namespace horizon::unruh {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMinFockDim = 4;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be finite");
  }
}

// Dense Kronecker product of real blocks; callers guard the output size.
Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

void SqueezingParameter::validate() const {
  require_finite(r, "squeezing parameter r");
  if (r < 0.0) throw DomainError("squeezing parameter r must be >= 0");
}

void AccelerationSpec::validate() const {
  require_finite(a, "acceleration a");
  require_finite(omega, "frequency omega");
  if (a <= 0.0) throw DomainError("acceleration a must be > 0");
  if (omega <= 0.0) throw DomainError("frequency omega must be > 0");
}

void SchwarzschildSpec::validate() const {
  require_finite(mass, "mass M");
  require_finite(radius, "radius R");
  if (mass <= 0.0) throw DomainError("mass M must be > 0");
  if (radius <= schwarzschild_radius()) {
    throw DomainError("radius R must lie strictly outside the horizon R_s = 2M");
  }
}

void Preparation::validate() const {
  require_finite(alpha_sq, "alpha_sq");
  if (alpha_sq < 0.0 || alpha_sq > 1.0) {
    throw DomainError("alpha_sq must lie in [0, 1]");
  }
}

std::string to_string(Encoding e) {
  return e == Encoding::single_rail ? "single_rail" : "dual_rail";
}

std::string to_string(Protocol p) {
  return p == Protocol::classical ? "classical" : "quantum";
}

Encoding encoding_from_string(const std::string& s) {
  if (s == "single_rail" || s == "single") return Encoding::single_rail;
  if (s == "dual_rail" || s == "dual") return Encoding::dual_rail;
  throw InputError("unknown encoding '" + s +
                   "' (expected single_rail or dual_rail)");
}

Protocol protocol_from_string(const std::string& s) {
  if (s == "classical") return Protocol::classical;
  if (s == "quantum") return Protocol::quantum;
  throw InputError("unknown protocol '" + s +
                   "' (expected classical or quantum)");
}

SqueezingParameter squeezing_from_acceleration(const AccelerationSpec& spec) {
  spec.validate();
  const double t = std::exp(-kPi * spec.omega / spec.a);
  return SqueezingParameter{std::atanh(t)};
}

AccelerationSpec acceleration_from_squeezing(const SqueezingParameter& r,
                                             double omega) {
  r.validate();
  require_finite(omega, "frequency omega");
  if (omega <= 0.0) throw DomainError("frequency omega must be > 0");
  if (r.r == 0.0) return AccelerationSpec{0.0, omega};  // inertial limit
  return AccelerationSpec{kPi * omega / (-std::log(std::tanh(r.r))), omega};
}

AccelerationSpec acceleration_from_schwarzschild(const SchwarzschildSpec& spec,
                                                 double omega) {
  spec.validate();
  const double a =
      1.0 / (4.0 * spec.mass *
             std::sqrt(1.0 - spec.schwarzschild_radius() / spec.radius));
  return AccelerationSpec{a, omega};
}

int adaptive_fock_dim(const SqueezingParameter& r,
                      const fock::TruncationPolicy& policy) {
  r.validate();
  policy.validate();
  const double t = std::tanh(r.r);
  const double T = t * t;
  if (T <= 0.0) return kMinFockDim;
  // The slowest-decaying tail is the one-photon output: the mass beyond the
  // first N levels is T^N (1 + N(1-T)).  Start from the pure-geometric guess
  // and walk forward until the full bound clears tail_epsilon.
  const double log_T = 2.0 * std::log(t);
  const double target = std::log(policy.tail_epsilon);
  int n = static_cast<int>(std::ceil(target / log_T));
  if (n < kMinFockDim) n = kMinFockDim;
  while (n < policy.max_dim &&
         log_T * n + std::log1p(n * (1.0 - T)) >= target) {
    ++n;
  }
  return n < policy.max_dim ? n : policy.max_dim;
}

fock::FockStateVector squeezed_vacuum_vector(
    const SqueezingParameter& r, int fock_dim,
    const fock::TruncationPolicy& policy) {
  r.validate();
  policy.validate();
  if (fock_dim < 2) throw InputError("fock_dim must be >= 2");
  if (fock_dim > policy.max_dim) {
    throw CapacityError("fock_dim exceeds the truncation policy cap");
  }
  const double t = std::tanh(r.r);
  Eigen::VectorXd amps = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(fock_dim) * fock_dim);
  double w = 1.0 / std::cosh(r.r);
  for (int n = 0; n < fock_dim; ++n) {
    amps(static_cast<Eigen::Index>(n) * fock_dim + n) = w;
    w *= t;
  }
  return fock::FockStateVector{{fock_dim, fock_dim}, std::move(amps)};
}

fock::FockStateVector squeezed_one_photon_vector(
    const SqueezingParameter& r, int fock_dim,
    const fock::TruncationPolicy& policy) {
  r.validate();
  policy.validate();
  if (fock_dim < 2) throw InputError("fock_dim must be >= 2");
  if (fock_dim > policy.max_dim) {
    throw CapacityError("fock_dim exceeds the truncation policy cap");
  }
  const double t = std::tanh(r.r);
  const double c = std::cosh(r.r);
  Eigen::VectorXd amps = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(fock_dim) * fock_dim);
  double w = 1.0 / (c * c);
  for (int n = 0; n + 1 < fock_dim; ++n) {
    amps(static_cast<Eigen::Index>(n + 1) * fock_dim + n) =
        w * std::sqrt(n + 1.0);
    w *= t;
  }
  return fock::FockStateVector{{fock_dim, fock_dim}, std::move(amps)};
}

Eigen::MatrixXd channel_element(int j, int k, const SqueezingParameter& r,
                                int fock_dim) {
  r.validate();
  if (j < 0 || j > 1 || k < 0 || k > 1) {
    throw InputError("channel_element indices must be 0 or 1");
  }
  if (fock_dim < 2) throw InputError("fock_dim must be >= 2");
  const double t = std::tanh(r.r);
  const double T = t * t;
  const double c = std::cosh(r.r);
  const double half_jk = 0.5 * (j + k);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(fock_dim, fock_dim);
  double w = 1.0 / std::pow(c, 2.0 + j + k);
  for (int n = 0; n + j < fock_dim && n + k < fock_dim; ++n) {
    out(n + j, n + k) = w * std::pow(n + 1.0, half_jk);
    w *= T;
  }
  return out;
}

fock::FockDensityMatrix joint_state(const Preparation& prep, Encoding encoding,
                                    Protocol protocol,
                                    const SqueezingParameter& r, int fock_dim,
                                    const fock::TruncationPolicy& policy) {
  prep.validate();
  r.validate();
  policy.validate();
  if (fock_dim < 2) throw InputError("fock_dim must be >= 2");
  if (fock_dim > policy.max_dim) {
    throw CapacityError("fock_dim exceeds the truncation policy cap");
  }

  const double a2 = prep.alpha_sq;
  const double b2 = prep.beta_sq();
  const double ab = std::sqrt(a2 * b2);  // coherence weight, phases dropped
  const bool coherent = protocol == Protocol::quantum;

  const Eigen::MatrixXd e00 = channel_element(0, 0, r, fock_dim);
  const Eigen::MatrixXd e11 = channel_element(1, 1, r, fock_dim);
  Eigen::MatrixXd e01, e10;
  if (coherent) {
    e01 = channel_element(0, 1, r, fock_dim);
    e10 = channel_element(1, 0, r, fock_dim);
  }

  std::vector<int> factors;
  Eigen::MatrixXd m00, m11, m01, m10;  // blocks indexed by Alice's qubit
  if (encoding == Encoding::single_rail) {
    factors = {2, fock_dim};
    m00 = e00;
    m11 = e11;
    if (coherent) {
      m01 = e01;
      m10 = e10;
    }
  } else {
    // Logical 0 = |1,0>, logical 1 = |0,1>; each mode goes through its own
    // squeezer at the same r.
    factors = {2, fock_dim, fock_dim};
    const long total =
        2L * static_cast<long>(fock_dim) * static_cast<long>(fock_dim);
    if (total > policy.max_dim) {
      throw CapacityError("dual-rail joint state exceeds the dense-matrix cap");
    }
    m00 = kron(e11, e00);
    m11 = kron(e00, e11);
    if (coherent) {
      m01 = kron(e10, e01);
      m10 = kron(e01, e10);
    }
  }

  const Eigen::Index d = m00.rows();
  Eigen::MatrixXcd joint = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  joint.topLeftCorner(d, d) = (a2 * m00).cast<std::complex<double>>();
  joint.bottomRightCorner(d, d) = (b2 * m11).cast<std::complex<double>>();
  if (coherent) {
    joint.topRightCorner(d, d) = (ab * m01).cast<std::complex<double>>();
    joint.bottomLeftCorner(d, d) = (ab * m10).cast<std::complex<double>>();
  }
  return fock::FockDensityMatrix(factors, std::move(joint));
}

}  // namespace horizon::unruh
