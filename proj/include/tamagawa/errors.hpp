#pragma once

#include <stdexcept>
#include <string>

namespace tamagawa {

/// Base of every error the engine reports. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or mathematically invalid input (exit code 2).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Scenario outside the regimes the engine can evaluate.
class UnsupportedRegime : public InputError {
 public:
  using InputError::InputError;
};

/// An explicit work budget would be exceeded (exit code 4).
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Two computations that must agree did not (exit code 3).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace tamagawa
