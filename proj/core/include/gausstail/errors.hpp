#pragma once

#include <stdexcept>
#include <string>

namespace gausstail {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (x <= 0 for a log, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Caller combined arguments in a way the API does not allow.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A truncated series does not carry enough terms for the request.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Moment integral does not converge at s = 0.
class DivergentMoment : public Error {
 public:
  using Error::Error;
};

/// Request is well-formed but not supported by this implementation.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Set description is inconsistent (bounds cross, seams disagree, negative profile ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Malformed structured-text input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Numerical integration did not reach the requested tolerance.
/// Carries the best estimate obtained before giving up.
class AccuracyFailure : public Error {
 public:
  AccuracyFailure(const std::string& what, double partial_value, double error_estimate)
      : Error(what), partial_value_(partial_value), error_estimate_(error_estimate) {}

  double partial_value() const noexcept { return partial_value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double partial_value_;
  double error_estimate_;
};

}  // namespace gausstail
