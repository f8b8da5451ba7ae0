#pragma once

#include <stdexcept>
#include <string>

namespace gfusion {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonFiniteInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// Raised when a system violates the triple's structural invariants
/// (non-positive weight, wrong operator shape, empty index set).
class InvalidSystem : public Error {
 public:
  using Error::Error;
};

/// Raised by operations that need a frame (canonical dual, certifiers).
/// Frame *verdicts* are values; this is only for hard preconditions.
class NotAFrame : public Error {
 public:
  using Error::Error;
};

class SystemMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class BadBasis : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace gfusion
