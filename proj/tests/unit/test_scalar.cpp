#include <cmath>
#include <numbers>

#include "doctest.h"
#include "expzero/errors.hpp"
#include "expzero/parser.hpp"
#include "expzero/scalar.hpp"

using namespace expzero;

TEST_CASE("rationals are kept in lowest terms with positive denominator") {
  Scalar a(Rational(6, -4));
  auto g = a.as_gauss();
  REQUIRE(g);
  CHECK(g->re().get_num() == -3);
  CHECK(g->re().get_den() == 2);
  CHECK(a.render() == "-3/2");
}

TEST_CASE("Gaussian arithmetic is exact") {
  Scalar i(GaussQ::imaginary_unit());
  CHECK(i * i == Scalar(-1));
  Scalar z(GaussQ(Rational(1), Rational(2)));
  CHECK(z * z.inverse() == Scalar(1));
  CHECK((z - z).is_zero());
  CHECK(Scalar(Rational(1, 3)) + Scalar(Rational(2, 3)) == Scalar(1));
}

TEST_CASE("only Gaussian scalars are invertible") {
  Scalar l = Scalar::log(LogConstant(Scalar(2), Scalar(1)));
  CHECK_THROWS_AS(l.inverse(), Error);
  CHECK_THROWS_AS(Scalar(0).inverse(), Error);
}

TEST_CASE("log constants are distinct symbols keyed by argument and branch") {
  LogConstant a(Scalar(2), Scalar(1));
  LogConstant b(Scalar(2), Scalar(1));
  LogConstant c(Scalar(3), Scalar(1));
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK_FALSE(a == a.with_branch(1));
  CHECK(LogConstant(Scalar(4), Scalar(2)) == a);
  Scalar s = Scalar::log(a) + Scalar::log(c);
  CHECK(s.has_logs());
  CHECK(s.log_constants().size() == 2);
  CHECK_THROWS_AS(LogConstant(Scalar(0), Scalar(1)), ContractError);
}

TEST_CASE("the principal log of 1 is zero, other branches are symbols") {
  CHECK(Scalar::log(LogConstant(Scalar(3), Scalar(3))).is_zero());
  CHECK_FALSE(Scalar::log(LogConstant(Scalar(1), Scalar(1), 1)).is_zero());
}

TEST_CASE("log values use the principal branch plus 2 pi i k") {
  LogConstant a(Scalar(2), Scalar(1));
  CHECK(std::abs(log_value(a) - std::log(Complex(2.0))) < 1e-15);
  for (long k : {-2L, 1L, 5L}) {
    Complex shift = log_value(a.with_branch(k)) - log_value(a);
    CHECK(shift.real() == 0.0);
    CHECK(std::abs(shift.imag() - 2.0 * std::numbers::pi * static_cast<double>(k)) <= 1e-15 * std::abs(k) * 8);
  }
  BranchEnv env{{a, 1}};
  CHECK(std::abs(log_value(a, &env) - log_value(a.with_branch(1))) < 1e-15);
}

TEST_CASE("nested logs evaluate through their arguments") {
  Scalar l2 = Scalar::log(LogConstant(Scalar(2), Scalar(1)));
  Scalar ll2 = Scalar::log(LogConstant(l2, Scalar(1)));
  CHECK(std::abs(ll2.to_complex() - std::log(std::log(2.0))) < 1e-15);
  CHECK(ll2.render() == "log(log(2))");
}

TEST_CASE("rendered scalars parse back") {
  for (const char* text : {"3/7", "-2", "i", "(1+2*i)", "log(2)", "2*log(3) - 1/2", "log[1](5)", "log((1+i)/(3))"}) {
    Scalar s = parse_scalar(text);
    CHECK(parse_scalar(s.render()) == s);
  }
}
