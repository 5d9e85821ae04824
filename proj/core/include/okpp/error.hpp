#pragma once

#include <stdexcept>
#include <string>

namespace okpp {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the caller's input was violated (bad parameter, bad
/// config, out-of-range mu). Maps to a usage/validation failure.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A computation failed numerically: non-finite state, no convergence,
/// singular solve.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Two independent routes to the same quantity disagreed. Always signals a
/// bug, never bad input.
class InconsistencyError : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

}  // namespace okpp
