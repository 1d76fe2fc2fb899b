#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rtenf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A policy file or trace literal could not be parsed.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  /// 1-based line number, 0 when not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A parsed policy violates a structural invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A trace mentions an action outside the alphabet in force.
class UnknownActionError : public Error {
 public:
  using Error::Error;
};

/// `last` was asked of the empty trace.
class EmptyTraceError : public Error {
 public:
  EmptyTraceError() : Error("last action of the empty trace is undefined") {}
};

/// A lattice promotion named the wrong source class.
class LatticeMismatchError : public Error {
 public:
  using Error::Error;
};

/// An enforcer session was configured with incompatible options.
class IncompatibleSessionError : public Error {
 public:
  using Error::Error;
};

/// The game oracle exceeded its memo-table budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace rtenf
