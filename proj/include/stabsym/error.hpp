#pragma once

#include <stdexcept>
#include <string>

namespace stabsym {

/// Malformed textual input (group files, polynomial files, rationals).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its domain: degree mismatch, index out
/// of range, a group that does not satisfy the required property, ...
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The identically-zero polynomial was passed where a nonzero one is needed.
class ZeroPolynomialError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Simultaneous root iteration did not reach its stopping criterion.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stabsym
