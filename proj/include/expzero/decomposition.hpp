#pragma once

// Decompositions: finite brick sets T whose exponentials polynomially
// generate p and each other, with the variable bricks x_i/L first.

#include <vector>

#include "expzero/exppoly.hpp"

namespace expzero {

struct Brick {
  ExpPoly body;
  unsigned height = 0;
};

struct Decomposition {
  VarList vars;
  std::vector<Brick> bricks;  // x_1/L .. x_n/L first, then by height
  std::size_t n = 0;
  mpz_class L = 1;
  bool refined = false;

  std::size_t alpha() const { return bricks.size(); }
};

/// x_i -> factors[i] * x_i'. Roots found in new coordinates map back by
/// a_i = factors[i] * a_i'.
struct Substitution {
  std::vector<Rational> factors;

  ExpPoly apply(const ExpPoly& p) const { return p.scale_variables(factors); }
  bool is_identity() const;
};

/// Throws DegenerateInputError for constant p.
Decomposition extract_decomposition(const ExpPoly& p);

Decomposition refine(const Decomposition& t);

struct NormalizedDecomposition {
  Decomposition decomposition;
  Substitution substitution;
};

/// Change of variables clearing L. Throws ContractError unless refined.
NormalizedDecomposition normalize_L(const Decomposition& t);

bool is_refined(const Decomposition& t);

/// Bricks as a set of rendered bodies, for comparisons in tests and output.
std::vector<std::string> brick_strings(const Decomposition& t);

}  // namespace expzero
