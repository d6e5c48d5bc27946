#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ssflab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Raised for malformed or inconsistent input (dimension mismatch, non-Hermitian
/// entries, real spectral parameter where a nonreal one is required, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a function cannot be evaluated on part of a spectrum.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a numerical routine fails to converge or hits a singular system.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_nonreal(Complex z, const char* where) {
  if (z.imag() == 0.0) {
    throw InvalidInput(std::string(where) + ": spectral parameter must be nonreal");
  }
}

}  // namespace ssflab
