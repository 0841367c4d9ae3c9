#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfinv {

/// Failure of a mathematical precondition: the input is well-formed but the
/// requested quantity is not defined (or not established) for it. Maps to
/// CLI exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDescriptor : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The second function-field hypothesis on the base is false or unknown.
class HypothesisRequired : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotMsUsComputable : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Enumeration would exceed the configured tower depth or candidate budget.
class CapExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed text input. Maps to CLI exit code 2.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace qfinv
