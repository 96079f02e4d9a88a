#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace expzero {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A term that is not an element of the exponential polynomial ring
/// (division by a non-constant, exp of a nonzero constant, ...).
class MalformedTermError : public Error {
 public:
  using Error::Error;
};

/// Operands live over different variable lists.
class ContextError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Input is valid but too degenerate for the operation (e.g. a constant).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Complex exponent outside the double range, |Re| > 700.
class NumericRangeError : public Error {
 public:
  using Error::Error;
};

/// A coordinate that must lie in K* is zero.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An internal self-check failed. Never expected on valid input.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Factorization exceeded its degree/variable budget.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::string partial)
      : Error(what), partial_(std::move(partial)) {}

  /// Rendered square-free decomposition computed before giving up.
  const std::string& partial() const noexcept { return partial_; }

 private:
  std::string partial_;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

/// Every sample drawn for a rank probe was degenerate.
class ProbeInconclusiveError : public Error {
 public:
  using Error::Error;
};

struct SourceSpan {
  std::size_t begin = 0;  // byte offsets, half open
  std::size_t end = 0;
};

class ParseError : public Error {
 public:
  enum class Kind { Lexical, UnbalancedParen, Syntax, UnknownIdentifier, Division };

  ParseError(Kind kind, const std::string& message, std::size_t line, std::size_t column,
             SourceSpan span)
      : Error(format(message, line, column)),
        kind_(kind),
        line_(line),
        column_(column),
        span_(span),
        message_(message) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  SourceSpan span() const noexcept { return span_; }
  const std::string& message() const noexcept { return message_; }

 private:
  static std::string format(const std::string& m, std::size_t line, std::size_t col) {
    return std::to_string(line) + ":" + std::to_string(col) + ": " + m;
  }

  Kind kind_;
  std::size_t line_;
  std::size_t column_;
  SourceSpan span_;
  std::string message_;
};

}  // namespace expzero
