#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fmaxwell {

// Bad input: arguments outside a function's domain, malformed or invalid data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure could not reach the requested accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class GridError : public InputError {
 public:
  using InputError::InputError;
};

// Errors tied to a line of a text input. Line numbers are 1-based.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public InputError {
 public:
  explicit ValidationError(const std::string& what) : InputError(what) {}
  ValidationError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  // 0 when the problem is not attached to a particular line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

class NonConvergent : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace fmaxwell
