#pragma once

#include <stdexcept>
#include <string>

namespace tatebc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter combination violates a mathematical precondition
/// (l == p, gcd(n, l) != 1, l not dividing q - 1, ...).
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of an operation (element not in the
/// claimed subfield, singular matrix, mismatched field levels, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configurable size bound was exceeded.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal identity that must hold did not. Signals a bug, or a
/// counterexample to the mathematics being verified.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw DomainError(what);
}

}  // namespace tatebc
