#pragma once

#include <stdexcept>
#include <string>

namespace valvol {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: bad literal, bad config line, out-of-range option.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Dimension or arity mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Division by zero or inversion of a singular matrix.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition does not hold (non-generating conditions,
/// point off the variety, unnormalized shifts, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A computation exceeded the documented desk-scale limits.
class ScaleError : public Error {
 public:
  using Error::Error;
};

}  // namespace valvol
