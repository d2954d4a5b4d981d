#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace varinterp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (e.g. t <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Exponent evaluated below 1 or to a non-finite value.
class InvalidExponentError : public Error {
 public:
  using Error::Error;
};

/// Missing or inconsistent configuration (limits, grids, suite config).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Modular overflowed at every admissible scale.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Problem exceeds a brute-force size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes disagree (vector lengths, grids, matrix sizes).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Decomposition solver failed while building a J-representation.
class ConstructionError : public Error {
 public:
  ConstructionError(const std::string& what, int index)
      : Error(what + " (v = " + std::to_string(index) + ")"), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// Exponent DSL syntax error; `offset` is the 0-based character position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at column " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace varinterp
