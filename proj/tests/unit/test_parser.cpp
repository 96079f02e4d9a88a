#include <random>

#include "common/corpus_expzero.hpp"
#include "doctest.h"
#include "expzero/errors.hpp"
#include "expzero/parser.hpp"

using namespace expzero;

namespace {

ParseError parse_error(const std::string& text, const ParseOptions& o = {}) {
  try {
    parse(text, o);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for " << text);
  throw;
}

}  // namespace

TEST_CASE("the running example parses to a height 2 tree") {
  SourceExpr e = parse("exp(exp(x1/2 + x2^2)) + x1^3");
  CHECK(e.kind == SourceExpr::Kind::Add);
  REQUIRE(e.children.size() == 2);
  CHECK(e.children[0].kind == SourceExpr::Kind::Exp);
  CHECK(e.children[0].children[0].kind == SourceExpr::Kind::Exp);
  CHECK(collect_variables(e) == std::vector<std::string>{"x1", "x2"});
  CHECK(normalize(e, make_vars({"x1", "x2"})).height() == 2);
}

TEST_CASE("unbalanced parenthesis is reported with its position") {
  ParseError e = parse_error("(x1");
  CHECK(e.kind() == ParseError::Kind::UnbalancedParen);
  CHECK(e.line() == 1);
  CHECK(e.column() == 4);
  CHECK(parse_error("x1)").kind() == ParseError::Kind::UnbalancedParen);
}

TEST_CASE("product of exponentials normalizes to one monomial") {
  SourceExpr e = parse("exp(x1)*exp(x2)");
  CHECK(e.kind == SourceExpr::Kind::Mul);
  CHECK(parse_exppoly("exp(x1)*exp(x2)").terms().size() == 1);
}

TEST_CASE("rendering") {
  CHECK(parse_exppoly("2*x1").render() == "2*x1");
  CHECK(parse_exppoly("exp(x2^2)*exp(x1/2)").render() == "exp(1/2*x1)*exp(x2^2)");
  ExpPoly p = parse_exppoly("exp(exp(x1/2+x2^2))+x1^3");
  CHECK(parse_exppoly(p.render()) == p);
}

TEST_CASE("division and literals") {
  CHECK(parse_exppoly("x1/2") == parse_exppoly("1/2*x1"));
  CHECK(parse_exppoly("3/4*x1 + (1+2*i)*x2").render() == "(1+2*i)*x2 + 3/4*x1");
  CHECK_THROWS_AS(parse_exppoly("x1/x2"), Error);
  CHECK(parse_error("x1 / ").kind() != ParseError::Kind::Lexical);
  CHECK(parse_error("x1 $ 2").kind() == ParseError::Kind::Lexical);
}

TEST_CASE("undeclared identifiers are rejected in strict mode") {
  ParseOptions o;
  o.declared_vars = std::vector<std::string>{"x1"};
  ParseError e = parse_error("x1 + x3", o);
  CHECK(e.kind() == ParseError::Kind::UnknownIdentifier);
  CHECK(e.column() == 6);
  CHECK_NOTHROW(parse_exppoly("x1^2", std::vector<std::string>{"x1"}));
}

TEST_CASE("round trip on the corpus") {
  for (const auto& entry : corpus::standard()) {
    ExpPoly p = parse_exppoly(entry.text);
    CHECK(parse_exppoly(p.render(), *p.vars()) == p);
  }
}

TEST_CASE("fuzz: every string parses or yields one diagnostic inside the input") {
  static const std::vector<std::string> pieces = {"x1", "x2", "y", "exp", "log", "(", ")", "(", ")", "+", "-", "*",
                                                  "/",  "^",  "2", "3",   "1/2", "i", " ", "[", "]", "$", "\n", "0",
                                                  "exp(", "x1/2", "^2", "#"};
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<std::size_t> len(0, 14);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::size_t parsed = 0, rejected = 0;
  for (int k = 0; k < 10000; ++k) {
    std::string s;
    for (std::size_t j = len(rng); j > 0; --j) s += pieces[pick(rng)];
    bool ok = false;
    try {
      parse(s);
      ok = true;
      ++parsed;
    } catch (const ParseError& e) {
      ++rejected;
      CHECK(e.span().begin <= e.span().end);
      CHECK(e.span().end <= s.size());
      CHECK(e.line() >= 1);
    } catch (...) {
      FAIL("non-diagnostic exception for: " << s);
    }
    if (ok) {
      try {
        parse_exppoly(s);
      } catch (const Error&) {
      } catch (...) {
        FAIL("normalization threw a foreign exception for: " << s);
      }
    }
  }
  CHECK(parsed + rejected == 10000);
  CHECK(parsed > 100);
}
