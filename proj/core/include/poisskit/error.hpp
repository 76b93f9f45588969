#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace poisskit {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position()` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A denominator vanished where a value was requested.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Bad arguments: chart mismatch, index out of range, wrong degree.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An identity that must hold (Jacobi, closedness, invertibility) failed.
/// The message carries the violating data in canonical text.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace poisskit
