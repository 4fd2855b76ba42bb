#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tropical {

// Base class of everything the library throws on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

// Operands of incompatible dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "dimension"; }
};

// An operation was called outside of its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "precondition"; }
};

class EmptyPolyhedronError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
  const char* kind() const noexcept override { return "empty_polyhedron"; }
};

class LinealityError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
  const char* kind() const noexcept override { return "not_pointed"; }
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}
  const char* kind() const noexcept override { return "parse"; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace tropical
