#pragma once

#include <map>
#include <optional>
#include <vector>

#include "expzero/scalar.hpp"

namespace expzero::detail {

using Mono = std::vector<int>;

/// Dense-free multivariate polynomial over Q(i); lex order with variable 0
/// most significant, so the leading term is the last map entry.
struct GPoly {
  std::size_t nv = 0;
  std::map<Mono, GaussQ> t;

  GPoly() = default;
  explicit GPoly(std::size_t n) : nv(n) {}
  static GPoly constant(std::size_t n, const GaussQ& c);

  bool is_zero() const { return t.empty(); }
  bool is_constant() const;
  bool is_rational() const;
  void add(const Mono& m, const GaussQ& c);
  const GaussQ& lead() const { return t.rbegin()->second; }
  int degree(std::size_t v) const;
  int total_degree() const;
  std::vector<std::size_t> used() const;

  friend bool operator==(const GPoly& a, const GPoly& b) { return a.t == b.t; }
};

GPoly operator+(const GPoly& a, const GPoly& b);
GPoly operator-(const GPoly& a, const GPoly& b);
GPoly operator*(const GPoly& a, const GPoly& b);
GPoly scale(const GPoly& a, const GaussQ& c);
GPoly pow(const GPoly& a, unsigned k);
GPoly monic(const GPoly& a);
GPoly derivative(const GPoly& a, std::size_t v);
GPoly conj(const GPoly& a);
/// v -> v + c.
GPoly shift(const GPoly& a, std::size_t v, const GaussQ& c);
std::optional<GPoly> divide(const GPoly& f, const GPoly& g);
GPoly content(const GPoly& f, std::size_t v);
/// Monic gcd; gcd(0, 0) = 0.
GPoly gcd(const GPoly& f, const GPoly& g);
/// Monic square-free parts with multiplicities; f monic and nonconstant.
std::vector<std::pair<GPoly, unsigned>> squarefree(const GPoly& f);

/// Univariate integer polynomials, lowest coefficient first.
using ZPoly = std::vector<mpz_class>;

struct ZFactorBudget {
  std::size_t max_subsets = 65536;
};

/// Irreducible factors over Z of a primitive F with positive leading
/// coefficient, repeated by multiplicity, each primitive with positive
/// leading coefficient. Counts subset tests into `subsets`.
std::vector<ZPoly> factor_z(const ZPoly& f, std::size_t& subsets, const ZFactorBudget& budget);

}  // namespace expzero::detail
