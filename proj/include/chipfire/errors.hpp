#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace chipfire {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the mathematical input was violated (unknown vertex,
/// degree out of range, genus too small, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed graph construction: disconnected, negative weight, duplicate
/// vertex, dangling edge endpoint.
class GraphError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An enumeration would exceed the configured candidate budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string what, std::uint64_t count, std::uint64_t budget)
      : Error(what + ": " + std::to_string(count) + " candidates exceed budget " +
              std::to_string(budget)),
        count_(count),
        budget_(budget) {}

  std::uint64_t count() const noexcept { return count_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t count_;
  std::uint64_t budget_;
};

/// Text input could not be parsed. Line and column are 1-based; column 0
/// means the whole line.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(format(message, line, column)), message_(message), line_(line), column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    std::string out = std::to_string(line);
    if (column != 0) out += ":" + std::to_string(column);
    return out + ": " + message;
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace chipfire
