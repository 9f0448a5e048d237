#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace affhom {

/// Base class for all failures raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class VariableMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace affhom

namespace affhom {

/// Input that violates an operation's stated precondition (e.g. a parameter
/// restriction of a catalog entry).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace affhom
