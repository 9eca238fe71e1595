#pragma once

#include <stdexcept>
#include <string>

namespace ehrenfest {

/// Malformed or inconsistent scenario input. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation left its domain of validity: diverged trajectory, lost
/// normalization, quadrature that failed to converge, wavepacket reaching
/// the grid edge. Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DomainExhaustedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Reading or writing files failed. Maps to CLI exit code 4.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ehrenfest
