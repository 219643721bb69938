#pragma once

#include <stdexcept>
#include <string>

namespace motionar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (shape, finiteness, range).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Input is well-formed but geometrically degenerate (e.g. zero-length limb).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Parsed record disagrees with its declared or expected shape.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Missing or inconsistent configuration (files, sidecars, flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Numerical failures: singular systems, non-positive denominators, overflow.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Information matrix is singular; a positive ridge term is required.
class RankDeficiency : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace motionar
