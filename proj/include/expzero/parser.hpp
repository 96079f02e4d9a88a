#pragma once

// Concrete syntax for exponential polynomials.
//
//   expr   := term (('+'|'-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | factor
//   factor := base ('^' nat)?
//   base   := '(' expr ')' | 'exp' '(' expr ')' | log | var | literal
//   var    := ident | ident '/' nat          -- x1/2 reads (1/2)*x1
//   literal:= int | int '/' nat | 'i'
//   log    := 'log' ('[' int ']')? '(' const ')'
//
// Inside a log argument only constants may appear, and '/' is allowed
// between any two of them. Everywhere else '/' is a syntax error.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expzero/errors.hpp"
#include "expzero/exppoly.hpp"

namespace expzero {

struct SourceExpr {
  enum class Kind { Number, Imaginary, Variable, Add, Sub, Mul, Div, Neg, Pow, Exp, Log };

  Kind kind = Kind::Number;
  Rational value{0};
  std::string name;
  unsigned power = 0;
  long branch = 0;
  std::vector<SourceExpr> children;
  SourceSpan span;
  std::size_t line = 1;
  std::size_t column = 1;
};

struct ParseOptions {
  /// When set, identifiers outside this list are rejected.
  std::optional<std::vector<std::string>> declared_vars;
  std::size_t max_depth = 256;
};

/// Throws ParseError, never anything else.
SourceExpr parse(std::string_view input, const ParseOptions& options = {});

/// Variable names occurring in the tree, in natural order (x2 before x10).
std::vector<std::string> collect_variables(const SourceExpr& e);

bool natural_less(const std::string& a, const std::string& b);

/// Tree to normal form over `vars`. Throws MalformedTermError for division
/// by anything that is not a constant and for exp of a nonzero constant.
ExpPoly normalize(const SourceExpr& e, const VarList& vars);

/// parse + normalize. Without `vars` the variables are auto-declared.
ExpPoly parse_exppoly(std::string_view text, const std::optional<std::vector<std::string>>& vars = {});

/// Parse text that must denote a constant (used for JSON coefficients).
Scalar parse_scalar(std::string_view text);

inline std::string render(const ExpPoly& p) { return p.render(); }

/// Compact s-expression view of a tree, for debugging and the CLI.
std::string dump(const SourceExpr& e);

}  // namespace expzero
