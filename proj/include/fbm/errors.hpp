#pragma once

#include <stdexcept>
#include <string>

namespace fbm {

// Root of the library's error taxonomy. The CLI maps these onto exit codes:
// validation errors -> 2, numerical faults -> 3, I/O failures -> 4.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

// Circulant embedding produced an eigenvalue below the clamping tolerance.
class EigenvalueNegative : public NumericalError {
public:
  using NumericalError::NumericalError;
};

// Dense-covariance sampler refused a grid beyond its O(N^3) guard.
class GridTooLarge : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// A Cholesky pivot fell below -1e-10: the covariance is not PSD.
class CovarianceNotPsd : public NumericalError {
public:
  using NumericalError::NumericalError;
};

// The posterior normaliser underflowed to zero.
class DegenerateMass : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class ParameterOutOfRange : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// Root bracketing failed: endpoints do not straddle a sign change.
class BracketFailure : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class QuadratureNotConverged : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class ConfigInvalid : public ValidationError {
public:
  using ValidationError::ValidationError;
};

}  // namespace fbm
