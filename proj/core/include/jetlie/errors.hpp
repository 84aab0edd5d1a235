#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetlie {

/// Base class of every error raised by the engine.
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

/// A jet coordinate of order above the supported cap was requested.
class OrderOverflow : public Error {
 public:
  using Error::Error;
};

/// Division by an identically zero expression.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Numerical evaluation failed (missing binding, denominator underflow, ...).
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// An algebraic precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace jetlie
