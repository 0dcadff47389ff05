#pragma once

#include <stdexcept>
#include <string>

namespace igeo {

// Root of every error raised by the library. The CLI maps the two branches
// below onto distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: invalid construction, mismatched shapes, missing configuration.
class InputError : public Error {
 public:
  using Error::Error;
};

// The numerics could not produce a valid answer for valid-looking input.
class NumericError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

// Fiber elements based at different densities, or of the wrong kind.
class BaseError : public InputError {
 public:
  using InputError::InputError;
};

class ConfigurationError : public InputError {
 public:
  using InputError::InputError;
};

// Point outside the open domain of a chart, a geodesic or a curve.
class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class IntegrationError : public NumericError {
 public:
  using NumericError::NumericError;
};

class RegularityError : public NumericError {
 public:
  using NumericError::NumericError;
};

class ConditioningError : public NumericError {
 public:
  using NumericError::NumericError;
};

class InfeasibleError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DegenerateError : public NumericError {
 public:
  using NumericError::NumericError;
};

class GradientContractError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Assembled fiber quantity was not centered before the final projection.
class CenteringError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace igeo
