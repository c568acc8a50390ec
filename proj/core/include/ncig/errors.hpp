#pragma once

#include <stdexcept>
#include <string>

namespace ncig {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not fit the operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A matrix that must be symmetric (or antisymmetric) is not.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

// Inputs lie outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The computation left its numerically trustworthy regime (lost positive
// definiteness, negative radicand beyond round-off, non-finite entries).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A finite-difference stencil stepped outside the family's domain.
class StepTooLargeError : public DomainError {
 public:
  StepTooLargeError(const std::string& what, double suggested_step)
      : DomainError(what), suggested_step_(suggested_step) {}

  // Largest step found to keep every stencil point valid (0 if none was found).
  double suggested_step() const noexcept { return suggested_step_; }

 private:
  double suggested_step_;
};

}  // namespace ncig
