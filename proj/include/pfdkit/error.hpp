#pragma once

#include <stdexcept>
#include <string>

namespace pfdkit {

/// Malformed input: bad syntax, unknown variable, wrong form degree, ...
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error with a 1-based source position.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, int line, int column)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A precondition on mathematical arguments does not hold.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured resource cap (generator count, pair count, component count) was hit.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pfdkit
