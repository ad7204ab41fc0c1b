#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace speccrit {

// Base of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed something that violates an operation's precondition
// (unknown node, self-loop, disconnected input where one is required, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An iterative eigensolver hit its iteration cap.
class NotConverged : public Error {
 public:
  using Error::Error;
};

// Navigation produced a state the no-loop argument rules out.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace speccrit
