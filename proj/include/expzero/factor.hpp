#pragma once

// Exact factorization of polynomials over Q(i)[log constants]. The log
// constants are algebraically independent, so they are handled as extra
// indeterminates and factors involving only them are units.

#include <string>
#include <vector>

#include "expzero/poly.hpp"

namespace expzero {

struct FactorBudget {
  int max_total_degree = 8;
  std::size_t max_vars = 5;
  std::size_t max_kronecker_degree = 400;
  std::size_t max_subsets = 65536;
};

struct Factor {
  Poly poly;
  unsigned multiplicity = 1;
};

struct Factorization {
  Scalar unit{1};
  std::vector<Factor> factors;  // irreducible, pairwise distinct

  Poly expand(const VarList& names) const;
  std::string render() const;
};

/// Irreducible factorization of a nonzero polynomial (no negative
/// exponents). The product is re-multiplied and checked on every call.
/// Throws BudgetError when a non-trivial split exceeds the budget.
Factorization factor(const Poly& f, const FactorBudget& budget = {});

/// Square-free decomposition f = unit * prod g_k^k.
Factorization squarefree(const Poly& f);

}  // namespace expzero
