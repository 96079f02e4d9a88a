#include <cmath>
#include <random>

#include "common/corpus_expzero.hpp"
#include "doctest.h"
#include "expzero/errors.hpp"
#include "expzero/numeric.hpp"
#include "expzero/variety.hpp"
#include "helpers.hpp"

using namespace expzero;
using testing::P;

namespace {

struct Built {
  ExpPoly p;  // in normalized coordinates
  Substitution s;
  VarietySystem v;
};

Built build(const ExpPoly& original) {
  auto nd = normalize_L(refine(extract_decomposition(original)));
  ExpPoly p = nd.substitution.apply(original);
  return Built{p, nd.substitution, build_variety(p, nd.decomposition)};
}

}  // namespace

TEST_CASE("running example system") {
  Built b = build(P("exp(exp(x1/2 + x2^2)) + x1^3"));
  const VarietySystem& v = b.v;
  CHECK(v.n == 2);
  CHECK(v.alpha == 4);
  CHECK(v.equation_count() == 3);
  REQUIRE(v.graph.size() == 2);
  CHECK(v.graph[0].render() == "4*x2^2");
  CHECK(v.graph[1].render() == "y1*y3");
  CHECK(v.hypersurface.render() == "8*x1^3 + y4");
  CHECK_FALSE(v.no_zeros);
  CHECK(reconstruct(v) == P("exp(exp(x1 + 4*x2^2)) + 8*x1^3"));
}

TEST_CASE("one brick system") {
  VarietySystem v = build(P("exp(x) - 2")).v;
  CHECK(v.n == 1);
  CHECK(v.alpha == 1);
  CHECK(v.graph.empty());
  CHECK(v.hypersurface.render() == "y1 - 2");
  CHECK(reconstruct(v) == P("exp(x) - 2"));
}

TEST_CASE("pure exponential flags the empty variety") {
  VarietySystem v = build(P("exp(x1^3)")).v;
  CHECK(v.hypersurface.render() == "y2");
  CHECK(v.no_zeros);
  CHECK(reconstruct(v) == P("exp(x1^3)"));
}

TEST_CASE("negative atoms give a shifted hypersurface") {
  Built b = build(P("exp(x1) + exp(-x1) - 3"));
  CHECK(b.v.hypersurface.is_polynomial());
  CHECK(reconstruct(b.v) == b.p);
}

TEST_CASE("contract errors") {
  ExpPoly p = P("exp(exp(x1/2 + x2^2)) + x1^3");
  Decomposition raw = refine(extract_decomposition(p));
  CHECK_THROWS_AS(build_variety(p, raw), ContractError);
  Decomposition unrefined = raw;
  unrefined.refined = false;
  CHECK_THROWS_AS(build_variety(p, unrefined), ContractError);
}

TEST_CASE("witness and membership on exp(x) - 2") {
  VarietySystem v = build(P("exp(x) - 2")).v;
  GPoint root = witness(v, {Complex(std::log(2.0))});
  CHECK(std::abs(root.y[0] - 2.0) < 1e-15);
  auto m = membership(v, root, 1e-12);
  CHECK(m.member);
  CHECK(m.residual < 1e-12);
  GPoint origin = witness(v, {Complex(0.0)});
  CHECK(origin.y[0] == Complex(1.0));
  auto n = membership(v, origin, 1e-8);
  CHECK_FALSE(n.member);
  CHECK(n.residual == doctest::Approx(1.0));
  GPoint zero_y{{Complex(0.0)}, {}, {Complex(0.0)}};
  CHECK_THROWS_AS(membership(v, zero_y, 1e-8), DomainError);
  CHECK_THROWS_AS(witness(v, {Complex(800.0)}), NumericRangeError);
}

TEST_CASE("running example: witness at a root, lift and project") {
  Built b = build(P("exp(exp(x1/2 + x2^2)) + x1^3"));
  RootResult r = find_root(b.p);
  REQUIRE(r.tag == RootResult::Tag::Root);
  GPoint pt = witness(b.v, r.assignment);
  const auto& a = r.assignment;
  CHECK(std::abs(pt.w[0] - 4.0 * a[1] * a[1]) < 1e-12);
  CHECK(std::abs(pt.w[1] - std::exp(a[0] + 4.0 * a[1] * a[1])) < 1e-9 * (1.0 + std::abs(pt.w[1])));
  CHECK(membership(b.v, pt, 1e-9).member);
  XYPoint xy = project_phi(pt);
  CHECK(xy.x == pt.x);
  CHECK(xy.y == pt.y);
  GPoint again = lift_phi(b.v, xy);
  GPoint twice = lift_phi(b.v, project_phi(again));
  CHECK(twice.w == again.w);
  CHECK(std::abs(again.w[1] - pt.y[0] * pt.y[2]) < 1e-15 * (1.0 + std::abs(again.w[1])));
}

TEST_CASE("corpus: reconstruction and graph identities hold exactly") {
  auto entries = corpus::standard();
  CHECK(entries.size() >= 50);
  for (const auto& entry : entries) {
    CAPTURE(entry.text);
    Built b = build(parse_exppoly(entry.text));
    CHECK(reconstruct(b.v) == b.p);
    for (std::size_t i = 0; i < b.v.alpha; ++i) CHECK(reconstruct_graph(b.v, i) == b.v.bricks[i]);
    CHECK(b.v.equation_count() == b.v.alpha - b.v.n + 1);
    CHECK(b.v.hypersurface.is_polynomial());
  }
}

TEST_CASE("corpus: witnesses of roots are members, of non-roots are not") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::size_t roots = 0, nonroots = 0;
  for (const auto& entry : corpus::standard()) {
    CAPTURE(entry.text);
    ExpPoly original = parse_exppoly(entry.text);
    Built b = build(original);
    RootResult r = find_root(original);
    if (r.tag == RootResult::Tag::Root) {
      std::vector<Complex> a(r.assignment.size());
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = r.assignment[i] / b.s.factors[i].get_d();
      CHECK(membership(b.v, witness(b.v, a), 1e-8).member);
      ++roots;
    }
    for (int k = 0; k < 3; ++k) {
      std::vector<Complex> a(original.nvars());
      for (auto& z : a) z = {u(rng), u(rng)};
      std::vector<Complex> scaled(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) scaled[i] = a[i] / b.s.factors[i].get_d();
      try {
        if (std::abs(eval_complex(original, a)) <= 1e-3) continue;
        CHECK_FALSE(membership(b.v, witness(b.v, scaled), 1e-8).member);
        ++nonroots;
      } catch (const NumericRangeError&) {
      }
    }
  }
  CHECK(roots >= 20);
  CHECK(nonroots >= 100);
}
