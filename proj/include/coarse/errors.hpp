#pragma once

#include <stdexcept>
#include <string>

namespace coarse {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands live on different ground sets.
class GroundSetMismatch : public Error {
 public:
  using Error::Error;
};

/// A label or index does not name a point of the ground set.
class UnknownPoint : public Error {
 public:
  using Error::Error;
};

/// Caller-supplied parameters violate an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A size cap (hyperspace or exhaustive-search regime) would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A construction that must succeed by theory failed re-verification.
/// Seeing this means the implementation is wrong, not the input.
class VerificationBug : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace coarse
