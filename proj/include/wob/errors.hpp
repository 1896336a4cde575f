#pragma once

// Exception hierarchy shared by every wob module.
//
// InputError   - the caller handed us something malformed (bad q, bad matrix
//                literal, unreadable CSV). The CLI maps these to exit code 2.
// RangeError   - the input is well formed but the requested method is not
//                defined there (e.g. Ihara below g2). Exit code 1.
// Error        - everything else (arithmetic misuse such as mixing radicands).

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wob {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

// qext
class DomainError : public InputError {
 public:
  using InputError::InputError;
};
class RadicandMismatch : public Error {
 public:
  using Error::Error;
};
class DivisionByZero : public Error {
 public:
  using Error::Error;
};
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : InputError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// classical / refine2
class InvalidParams : public InputError {
 public:
  using InputError::InputError;
};
class BelowIharaRange : public RangeError {
 public:
  using RangeError::RangeError;
};
class OutOfIharaRange : public RangeError {
 public:
  using RangeError::RangeError;
};
class InvalidCut : public InputError {
 public:
  using InputError::InputError;
};
class UncertifiedCut : public InputError {
 public:
  using InputError::InputError;
};
class NotPositiveDefinite : public InputError {
 public:
  using InputError::InputError;
};

// order3
class IntegralityViolation : public InputError {
 public:
  using InputError::InputError;
};
class NotPSD : public InputError {
 public:
  using InputError::InputError;
};
class NoRealRoot : public RangeError {
 public:
  using RangeError::RangeError;
};
class EmptySearch : public RangeError {
 public:
  using RangeError::RangeError;
};

// verify
class DegreeTooHigh : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace wob
