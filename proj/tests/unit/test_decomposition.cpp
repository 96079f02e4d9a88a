#include <algorithm>
#include <set>

#include "common/corpus_expzero.hpp"
#include "doctest.h"
#include "expzero/decomposition.hpp"
#include "expzero/errors.hpp"
#include "helpers.hpp"

using namespace expzero;
using testing::P;

namespace {

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

Decomposition manual(const std::vector<std::string>& vars, const std::vector<std::string>& bodies, std::size_t n,
                     mpz_class L = 1) {
  Decomposition t;
  t.vars = make_vars(vars);
  t.n = n;
  t.L = L;
  for (const auto& b : bodies) {
    ExpPoly body = parse_exppoly(b, vars);
    t.bricks.push_back(Brick{body, body.height()});
  }
  return t;
}

}  // namespace

TEST_CASE("running example decomposition") {
  Decomposition t = extract_decomposition(P("exp(exp(x1/2 + x2^2)) + x1^3"));
  CHECK(as_set(brick_strings(t)) ==
        std::set<std::string>{"1/2*x1", "1/2*x2", "x2^2", "exp(1/2*x1)*exp(x2^2)"});
  CHECK(t.L == 2);
  CHECK(t.n == 2);
  CHECK(is_refined(t));
  CHECK(is_refined(refine(t)));
}

TEST_CASE("polynomials and single atoms") {
  Decomposition a = extract_decomposition(P("x1^3 + x2"));
  CHECK(brick_strings(a) == std::vector<std::string>{"x1", "x2"});
  CHECK(a.L == 1);
  Decomposition b = extract_decomposition(P("exp(x1) - 2"));
  CHECK(brick_strings(b) == std::vector<std::string>{"x1"});
  CHECK(b.L == 1);
  CHECK_THROWS_AS(extract_decomposition(P("3", {"x1"})), DegenerateInputError);
}

TEST_CASE("refinement removes dependent bricks") {
  Decomposition t = manual({"x1", "x2"}, {"1/2*x1", "1/2*x2", "x2^2", "1/2*x1 + x2^2"}, 2, 2);
  CHECK_FALSE(is_refined(t));
  Decomposition r = refine(t);
  CHECK(as_set(brick_strings(r)) == std::set<std::string>{"1/2*x1", "1/2*x2", "x2^2"});
  CHECK(is_refined(r));

  Decomposition s = manual({"x1", "x2"}, {"x1", "x2", "x1 + x2"}, 2);
  CHECK_FALSE(is_refined(s));
  CHECK(brick_strings(refine(s)) == std::vector<std::string>{"x1", "x2"});

  Decomposition e = manual({"x1"}, {}, 0);
  CHECK(is_refined(e));
}

TEST_CASE("refinement rescales bricks on rational dependencies") {
  Decomposition t = manual({"x1"}, {"x1", "x1^2", "1/3*x1^2"}, 1);
  Decomposition r = refine(t);
  CHECK(is_refined(r));
  CHECK(as_set(brick_strings(r)) == std::set<std::string>{"x1", "1/3*x1^2"});
  Decomposition u = manual({"x1"}, {"x1", "x1^2", "3/2*x1"}, 1);
  Decomposition ru = refine(u);
  CHECK(ru.L == 2);
  CHECK(as_set(brick_strings(ru)) == std::set<std::string>{"1/2*x1", "x1^2"});
}

TEST_CASE("already refined decompositions are fixed points") {
  Decomposition t = refine(extract_decomposition(P("exp(exp(x1/2 + x2^2)) + x1^3")));
  CHECK(brick_strings(refine(t)) == brick_strings(t));
}

TEST_CASE("normalize_L on the running example") {
  auto nd = normalize_L(refine(extract_decomposition(P("exp(exp(x1/2 + x2^2)) + x1^3"))));
  CHECK(nd.decomposition.L == 1);
  CHECK(as_set(brick_strings(nd.decomposition)) ==
        std::set<std::string>{"x1", "x2", "4*x2^2", "exp(4*x2^2)*exp(x1)"});
  CHECK(nd.substitution.factors == std::vector<Rational>{2, 2});
  CHECK(nd.substitution.apply(P("exp(exp(x1/2 + x2^2)) + x1^3")) == P("exp(exp(x1 + 4*x2^2)) + 8*x1^3"));
}

TEST_CASE("normalize_L clears mixed denominators and is the identity for L = 1") {
  auto nd = normalize_L(refine(extract_decomposition(P("exp(x1/2) + exp(x2/3)"))));
  CHECK(nd.substitution.factors == std::vector<Rational>{6, 6});
  CHECK(nd.decomposition.L == 1);
  auto id = normalize_L(refine(extract_decomposition(P("exp(x1) - 2"))));
  CHECK(id.substitution.is_identity());
  CHECK_THROWS_AS(normalize_L(manual({"x1", "x2"}, {"x1", "x2", "x1 + x2"}, 2)), ContractError);
}

TEST_CASE("corpus: refined, ordered by height, variables first") {
  for (const auto& entry : corpus::standard()) {
    ExpPoly p = parse_exppoly(entry.text);
    Decomposition t = refine(extract_decomposition(p));
    CAPTURE(entry.text);
    CHECK(is_refined(t));
    CHECK(t.refined);
    for (std::size_t i = 0; i < t.n; ++i)
      CHECK(t.bricks[i].body == Scalar(Rational(1) / Rational(t.L)) * ExpPoly::variable(t.vars, i));
    for (std::size_t i = 1; i < t.alpha(); ++i) CHECK(t.bricks[i - 1].height <= t.bricks[i].height);
    auto names = brick_strings(t);
    CHECK(as_set(names).size() == names.size());
  }
}
