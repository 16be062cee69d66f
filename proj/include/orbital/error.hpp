#pragma once

#include <stdexcept>
#include <string>

namespace orbital {

// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text, bad arguments, or violated preconditions.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// An exact enumeration would exceed its configured cap.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// The model admits no state (e.g. HARD clauses are unsatisfiable) or a
// required initial state is infeasible.
class Infeasible : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed. Indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace orbital
