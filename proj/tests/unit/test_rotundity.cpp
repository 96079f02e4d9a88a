#include <cmath>

#include "doctest.h"
#include "expzero/errors.hpp"
#include "expzero/reduction.hpp"
#include "expzero/rotundity.hpp"
#include "helpers.hpp"

using namespace expzero;
using testing::P;

namespace {

VarietySystem system_of(const ExpPoly& p) {
  auto nd = normalize_L(refine(extract_decomposition(p)));
  return build_variety(nd.substitution.apply(p), nd.decomposition);
}

IntMatrix rows(std::vector<std::vector<long>> r) {
  IntMatrix m(r.size(), r.front().size());
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = r[i][j];
  return m;
}

const char* kExample = "exp(exp(x1/2 + x2^2)) + x1^3";

}  // namespace

TEST_CASE("exact rank") {
  CHECK(IntMatrix::identity(4).rank() == 4);
  CHECK(rows({{1, 2, 3}, {2, 4, 6}}).rank() == 1);
  CHECK(rows({{1, 2}, {3, 4}}).rank() == 2);
}

TEST_CASE("apply_C") {
  IntMatrix c = rows({{1, 1}, {2, -1}});
  CPoint out = apply_C(c, {Complex(1, 0), Complex(0, 2)}, {Complex(2, 0), Complex(0, 1)});
  CHECK(std::abs(out.u[0] - Complex(1, 2)) < 1e-15);
  CHECK(std::abs(out.u[1] - Complex(2, -2)) < 1e-15);
  CHECK(std::abs(out.v[0] - Complex(0, 2)) < 1e-15);
  CHECK(std::abs(out.v[1] - Complex(0, -4)) < 1e-15);
  CHECK_THROWS(apply_C(c, {1.0, 1.0}, {0.0, 1.0}));
}

TEST_CASE("sampled points lie on V") {
  std::mt19937_64 rng(7);
  VarietySystem v = system_of(P("exp(x) - 2"));
  for (int k = 0; k < 10; ++k) {
    GPoint pt = sample_variety_point(v, rng);
    CHECK(std::abs(pt.y[0] - 2.0) < 1e-12);
    CHECK(membership(v, pt, 1e-9).member);
  }
  v = system_of(P("exp(2*x) - 4"));
  for (int k = 0; k < 10; ++k) {
    GPoint pt = sample_variety_point(v, rng);
    CHECK(std::abs(std::abs(pt.y[0]) - 2.0) < 1e-12);
    CHECK(std::abs(pt.y[0].imag()) < 1e-12);
  }
  v = system_of(P(kExample));
  for (int k = 0; k < 20; ++k) CHECK(membership(v, sample_variety_point(v, rng), 1e-9).member);
}

TEST_CASE("image rank probe") {
  VarietySystem v = system_of(P(kExample));
  std::mt19937_64 rng(1);
  auto full = image_rank_probe(v, IntMatrix::identity(4), rng);
  CHECK(full.rank == 5);
  CHECK(full.rank >= 4);
  auto one = image_rank_probe(v, rows({{1, 0, 0, 0}}), rng);
  CHECK(one.rank >= 1);
  CHECK_THROWS_AS(image_rank_probe(v, rows({{1, 0, 0, 0}, {2, 0, 0, 0}}), rng), ContractError);
  CHECK_THROWS_AS(image_rank_probe(v, rows({{1, 0, 0}}), rng), ContractError);
}

TEST_CASE("pinning x collapses the image") {
  VarietySystem v = system_of(P("exp(x1) - 1"));
  ProbeConfig config;
  config.sampling.pinned_x[0] = Complex(0, 0);
  std::mt19937_64 rng(3);
  auto est = image_rank_probe(v, rows({{1}}), rng, config);
  CHECK(est.rank == 0);
  CHECK(est.rank < 1);
}

TEST_CASE("rotundity probe") {
  VarietySystem v = system_of(P(kExample));
  RotundityConfig config;
  config.seed = 42;
  auto a = rotundity_probe(v, config);
  CHECK(a.identity_rank == 5);
  CHECK(a.expected_dimension == 5);
  CHECK(a.records.size() == 100);
  CHECK(a.pass);
  for (const auto& r : a.records) {
    CHECK(r.c.rank() == r.r);
    for (long e : r.c.data) CHECK(std::abs(e) <= 3);
  }
  auto b = rotundity_probe(v, config);
  REQUIRE(b.records.size() == a.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    CHECK(a.records[k].c.data == b.records[k].c.data);
    CHECK(a.records[k].rank == b.records[k].rank);
  }
  CHECK_THROWS_AS(rotundity_probe(system_of(P("exp(x) - 2"))), ContractError);
}
