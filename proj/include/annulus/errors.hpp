#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace annulus {

// Base class for everything the library throws on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (cycle notation, shapes, words, partitions).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Well-formed input that violates an operation's precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An enumeration or exact sum was asked to run beyond its configured size limit.
class GuardError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace annulus
