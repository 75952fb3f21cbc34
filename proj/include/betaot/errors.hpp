#pragma once

#include <stdexcept>
#include <string>

namespace betaot {

/// Base of every error the library throws. `exit_code()` is what the CLI
/// returns when the error escapes a command.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 2; }
};

/// Malformed input: bad files, shape mismatches, invalid arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Argument outside a generator's domain.
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

/// Operation not available for the requested generator.
class UnsupportedError : public InputError {
 public:
  using InputError::InputError;
};

/// Outlier tolerance or iteration budget that cannot be honoured.
class InfeasibleError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

/// Underflow, non-finite values, and similar numerical breakdowns.
class NumericalError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

}  // namespace betaot
