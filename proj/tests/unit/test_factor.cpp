#include <set>

#include "doctest.h"
#include "expzero/errors.hpp"
#include "expzero/factor.hpp"
#include "helpers.hpp"

using namespace expzero;
using testing::Q;

namespace {

std::set<std::string> rendered(const Factorization& f) {
  std::set<std::string> out;
  for (const auto& x : f.factors) out.insert(x.poly.render() + "^" + std::to_string(x.multiplicity));
  return out;
}

const std::vector<std::string> Y = {"x1", "y1", "y2", "y3"};

}  // namespace

TEST_CASE("difference of squares splits") {
  auto f = factor(Q("y1^2 - 4", Y));
  CHECK(rendered(f) == std::set<std::string>{"y1 - 2^1", "y1 + 2^1"});
  CHECK(f.unit.is_one());
}

TEST_CASE("linear in one variable with unit content is irreducible") {
  auto f = factor(Q("y3 + 8*x1^3", Y));
  REQUIRE(f.factors.size() == 1);
  CHECK(f.factors[0].poly.render() == "8*x1^3 + y3");
  CHECK(f.unit.is_one());
}

TEST_CASE("common monomial factor comes out") {
  auto f = factor(Q("y1*y2 - y1", Y));
  CHECK(rendered(f) == std::set<std::string>{"y1^1", "y2 - 1^1"});
}

TEST_CASE("repeated factors carry multiplicity") {
  auto f = factor(Q("(y1 - 1)^3*(y2 + y1)^2*3", Y));
  CHECK(rendered(f) == std::set<std::string>{"y1 - 1^3", "y1 + y2^2"});
  CHECK(f.unit == Scalar(3));
}

TEST_CASE("multivariate nonlinear factors are found") {
  auto f = factor(Q("(y1^2 + y2^2 + 1)*(y1^2 - y2^3 + x1^2)", Y));
  CHECK(f.factors.size() == 2);
  auto g = factor(Q("y1^4 - y2^4", Y));
  CHECK(rendered(g) == std::set<std::string>{"y1 - y2^1", "y1 + y2^1", "y1 - i*y2^1", "y1 + i*y2^1"});
}

TEST_CASE("gaussian splitting through the norm") {
  auto f = factor(Q("y1^2 + 4", Y));
  CHECK(rendered(f) == std::set<std::string>{"y1 - 2*i^1", "y1 + 2*i^1"});
  auto g = factor(Q("y1^2 - 2", Y));
  CHECK(g.factors.size() == 1);
}

TEST_CASE("log constants behave as independent indeterminates") {
  auto f = factor(Q("log(2)*y1^2 - log(2)", Y));
  CHECK(rendered(f) == std::set<std::string>{"y1 - 1^1", "y1 + 1^1"});
  CHECK(f.unit == Scalar::log(LogConstant(Scalar(2), Scalar(1))));
}

TEST_CASE("factor product always multiplies back") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3), ex(0, 2);
  for (int trial = 0; trial < 60; ++trial) {
    auto names = make_vars(Y);
    auto random_poly = [&] {
      Poly p(names);
      for (int k = 0; k < 3; ++k) {
        Exponents e{ex(rng), ex(rng), ex(rng) % 2, 0};
        p.add_term(e, Scalar(coef(rng)));
      }
      return p;
    };
    Poly a = random_poly(), b = random_poly();
    Poly prod = a * b;
    if (prod.is_zero()) continue;
    Factorization f = factor(prod);
    CHECK(f.expand(names) == prod);
  }
}

TEST_CASE("budget violations report a partial result") {
  FactorBudget tight;
  tight.max_total_degree = 2;
  try {
    factor(Q("(y1^2 + y2^2 + 1)*(y1^2 - y2^3 + x1^2)", Y), tight);
    FAIL("expected a budget error");
  } catch (const BudgetError& e) {
    CHECK(!e.partial().empty());
  }
  CHECK_THROWS_AS(factor(Poly(make_vars(Y))), ContractError);
}
