#include <cmath>
#include <numbers>
#include <random>

#include "common/corpus_expzero.hpp"
#include "doctest.h"
#include "expzero/errors.hpp"
#include "expzero/numeric.hpp"
#include "helpers.hpp"

using namespace expzero;
using testing::P;

TEST_CASE("evaluation examples") {
  CHECK(eval_complex(P("exp(x)"), {Complex(0.0)}) == Complex(1.0));
  Complex e = eval_complex(P("exp(exp(x1/2 + x2^2)) + x1^3"), {Complex(0.0), Complex(0.0)});
  CHECK(std::abs(e - std::exp(1.0)) < 1e-15);
  ExpPoly q = P("x - log(2)");
  CHECK(std::abs(eval_complex(q, {Complex(std::log(2.0))})) < 1e-15);
  CHECK_THROWS_AS(eval_complex(P("exp(x)"), {Complex(701.0)}), NumericRangeError);
  CHECK_THROWS_AS(eval_complex(P("exp(x)"), {}), ContextError);
}

TEST_CASE("branch index shifts a log constant by 2 pi i") {
  ExpPoly p0 = P("log(3)");
  ExpPoly p1 = P("log[1](3)");
  Complex d = eval_complex(p1, {}) - eval_complex(p0, {});
  CHECK(d.real() == 0.0);
  CHECK(std::abs(d.imag() - 2.0 * std::numbers::pi) <= 4.0 * std::numeric_limits<double>::epsilon() * 2.0 * std::numbers::pi);
}

TEST_CASE("root finding examples") {
  RootResult a = find_root(P("exp(z) + z"));
  REQUIRE(a.tag == RootResult::Tag::Root);
  CHECK(std::abs(a.assignment[0] - Complex(-0.5671432904097838)) < 1e-9);
  CHECK(std::abs(eval_complex(P("exp(z) + z"), a.assignment)) < 1e-12);
  RootResult b = find_root(P("exp(z) - 2"));
  REQUIRE(b.tag == RootResult::Tag::Root);
  CHECK(std::abs(b.assignment[0] - std::log(2.0)) < 1e-10);
  RootResult c = find_root(P("exp(z^3)"));
  CHECK(c.tag == RootResult::Tag::NoZeros);
  REQUIRE(c.certificate);
  CHECK(c.certificate->render() == "z^3");
  CHECK_THROWS_AS(find_root(P("5", {"z"})), DegenerateInputError);
}

TEST_CASE("verify_root") {
  ExpPoly p = P("exp(z) - 2");
  CHECK(verify_root(p, {Complex(std::log(2.0))}, nullptr, 1e-10).ok);
  auto r = verify_root(p, {Complex(0.0)}, nullptr, 1e-10);
  CHECK_FALSE(r.ok);
  CHECK(r.residual == doctest::Approx(1.0));
  CHECK(verify_root(P("exp(z) + z"), {Complex(-0.5671433)}, nullptr, 1e-6).ok);
}

TEST_CASE("seeds are deterministic and ordered") {
  auto s = root_seeds(7);
  CHECK(s.size() == 13 + 49);
  CHECK(s[0] == Complex(0.0));
  CHECK(s[4] == Complex(-0.5));
  CHECK(root_seeds(7) == s);
}

TEST_CASE("every root passes verify_root at the configured tolerance") {
  RootConfig cfg;
  for (const auto& entry : corpus::standard()) {
    ExpPoly p = parse_exppoly(entry.text);
    RootResult r = find_root(p, cfg);
    if (r.tag != RootResult::Tag::Root) continue;
    CAPTURE(entry.text);
    CHECK(verify_root(p, r.assignment, nullptr, cfg.tol).ok);
  }
}

// Fixed-step differences stop being an oracle once |p| dwarfs its own
// increments, so points come from the box |Re|, |Im| <= 1/2 and points
// where rounding alone exceeds the tolerance are redrawn.
TEST_CASE("gradients agree with central finite differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const double h = 1e-6;
  std::size_t checked = 0;
  for (const auto& entry : corpus::standard()) {
    ExpPoly p = parse_exppoly(entry.text);
    CAPTURE(entry.text);
    int points = 0;
    for (int attempt = 0; points < 100 && attempt < 1000; ++attempt) {
      std::vector<Complex> x(p.nvars());
      for (auto& z : x) z = {u(rng), u(rng)};
      std::vector<Complex> grad, fd(x.size());
      Complex value;
      try {
        value = eval_gradient(p, x, grad);
        for (std::size_t v = 0; v < x.size(); ++v) {
          auto xp = x, xm = x;
          xp[v] += h;
          xm[v] -= h;
          fd[v] = (eval_complex(p, xp) - eval_complex(p, xm)) / (2.0 * h);
        }
      } catch (const NumericRangeError&) {
        continue;
      }
      // Rounding in p(x +- h) alone is about eps * |p| / h.
      double rounding = std::numeric_limits<double>::epsilon() * std::abs(value) / h;
      bool resolvable = true;
      for (std::size_t v = 0; v < x.size(); ++v)
        resolvable = resolvable && rounding <= 1e-6 * std::max({std::abs(grad[v]), std::abs(fd[v]), 1.0});
      if (!resolvable) continue;
      ++points;
      for (std::size_t v = 0; v < x.size(); ++v) {
        double scale = std::max({std::abs(grad[v]), std::abs(fd[v]), 1.0});
        CHECK(std::abs(grad[v] - fd[v]) <= 1e-5 * scale);
        ++checked;
      }
    }
    CHECK(points == 100);
  }
  CHECK(checked >= 6000);
}
