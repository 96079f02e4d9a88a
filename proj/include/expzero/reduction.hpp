#pragma once

// Factor selection, freeness detection and height reduction, iterated until
// the witness variety is free or the input has become a polynomial.

#include <optional>
#include <string>
#include <vector>

#include "expzero/factor.hpp"
#include "expzero/variety.hpp"

namespace expzero {

struct FreenessResult {
  enum class Tag { Free, NotFreeMultiplicative, NotFreeAdditive };

  Tag tag = Tag::Free;
  std::vector<int> m;  // length alpha
  Scalar b_num{0};     // b = b_num / b_den
  Scalar b_den{1};

  /// sum m_j * t_j, the exponent with exp(g) = b on V.
  std::optional<ExpPoly> g;

  bool is_free() const { return tag == Tag::Free; }
  std::string render_b() const;
};

/// Irreducible factorization of p*.
Factorization factor_pstar(const VarietySystem& v, const FactorBudget& budget = {});

struct Selection {
  enum class Kind { Factor, NoY, AllMonomial };

  Kind kind = Kind::AllMonomial;
  Poly factor;
  /// Sub-system over the bricks the factor uses, with p* = factor.
  std::optional<VarietySystem> system;
  /// factor with y_j -> exp(t_j).
  std::optional<ExpPoly> p_hat;
};

/// First factor that is not a constant times a monomial in y.
Selection select_factor(const VarietySystem& v, const Factorization& f);

/// p* = k * (y^m - b) with neither monomial involving x means not free.
FreenessResult freeness_check(const VarietySystem& v);

/// p' = g - log(b) on the given branch. Throws ContractError unless the
/// witness is multiplicative.
ExpPoly reduce_height(const FreenessResult& witness, long branch = 0);

struct ReductionConfig {
  long branch = 0;
  FactorBudget budget;
};

struct ReductionStep {
  enum class Kind { Reduce, Free, PolynomialFactor, NoZeros };

  Kind kind = Kind::Reduce;
  std::string input;
  std::string pstar;
  std::vector<std::string> factors;
  std::string chosen;
  std::vector<int> m;
  std::string b;
  long branch = 0;
  std::string result;
  unsigned height_before = 0;
  unsigned height_after = 0;
};

struct ReductionOutcome {
  enum class Tag { FreeSystem, Polynomial, NoZeros };

  Tag tag = Tag::Polynomial;
  std::optional<VarietySystem> system;
  std::optional<ExpPoly> polynomial;
  std::optional<ExpPoly> certificate;  // g with final_p = k * exp(g)
  ExpPoly final_p{make_vars({})};
  /// x_original = scale[i] * x_final.
  std::vector<Rational> scale;
  std::vector<ReductionStep> trace;

  /// Number of height reductions in the trace.
  std::size_t reductions() const;
  std::vector<Complex> map_back(const std::vector<Complex>& point) const;
};

std::string tag_name(ReductionOutcome::Tag t);
std::string tag_name(FreenessResult::Tag t);
std::string tag_name(ReductionStep::Kind k);

/// Throws DegenerateInputError for constant p; budget errors propagate.
ReductionOutcome free_or_poly_loop(const ExpPoly& p, const ReductionConfig& config = {});

}  // namespace expzero
