#pragma once

#include <stdexcept>
#include <string>

namespace jetlie {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A primitive was evaluated outside its domain (log of a nonpositive base,
/// division by zero, a chart point outside its validity ball, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A computed identity missed its tolerance.
class ToleranceError : public Error {
 public:
  using Error::Error;
};

/// Rejected user configuration (unknown catalog names, bad flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace jetlie
