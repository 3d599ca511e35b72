// errors.hpp -- exception taxonomy shared by all horizon modules.
#pragma once

#include <stdexcept>
#include <string>

namespace horizon {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed caller input: bad dimensions, unnormalized probability vectors,
// out-of-range subsystem indices, invalid grids.
class InputError : public Error {
 public:
  using Error::Error;
};

// Physically meaningless parameter values: non-positive acceleration,
// radius at or inside the horizon, negative squeezing.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An operator that was required to be Hermitian is not.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A density matrix has a negative eigenvalue beyond tolerance.
class PositivityError : public Error {
 public:
  using Error::Error;
};

// A requested object exceeds the configured dimension cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A series failed to meet its stopping rule within the term budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A truncated Fock basis is too small for the requested accuracy.
// Carries the smallest dimension estimated to be adequate.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int suggested_dim)
      : Error(what), suggested_dim_(suggested_dim) {}
  int suggested_dim() const { return suggested_dim_; }

 private:
  int suggested_dim_;
};

}  // namespace horizon
