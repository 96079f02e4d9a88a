#pragma once

// Exponential polynomials in tower normal form.
//
// An element of K[x]^E is stored as a finite sum
//
//     sum_k  c_k * x^(a_k) * exp(g_k)
//
// where c_k is a nonzero Scalar, a_k a vector of natural exponents and g_k an
// exponential polynomial with zero constant term (or absent). The exponents
// g_k are themselves in normal form and pairwise distinct for equal a_k, so
// the representation is canonical: two values are the same ring element iff
// they compare equal. exp(s + t) is always stored as the single exponent
// s + t; the product-of-atoms reading exp(s) * exp(t) is produced on demand
// by atoms() and by the renderer.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expzero/scalar.hpp"

namespace expzero {

class ExpPoly;

using VarList = std::shared_ptr<const std::vector<std::string>>;

VarList make_vars(std::vector<std::string> names);
bool same_vars(const VarList& a, const VarList& b);

struct TermKey {
  std::vector<unsigned> powers;
  std::shared_ptr<const ExpPoly> exponent;  // null when there is no exp factor

  bool is_constant() const;
  unsigned degree() const;
};

int compare(const TermKey& a, const TermKey& b);

struct TermKeyLess {
  bool operator()(const TermKey& a, const TermKey& b) const { return compare(a, b) < 0; }
};

class ExpPoly {
 public:
  using TermMap = std::map<TermKey, Scalar, TermKeyLess>;

  /// The zero polynomial over `vars`.
  explicit ExpPoly(VarList vars);

  static ExpPoly constant(VarList vars, const Scalar& c);
  static ExpPoly variable(VarList vars, std::size_t index);
  static ExpPoly term(VarList vars, TermKey key, const Scalar& c);
  /// exp(g). exp(0) = 1; a nonzero constant summand in g is rejected.
  static ExpPoly exp(const ExpPoly& g);

  const VarList& vars() const noexcept { return vars_; }
  std::size_t nvars() const noexcept { return vars_->size(); }
  const TermMap& terms() const noexcept { return terms_; }

  /// Least n with the element in R_n.
  unsigned height() const noexcept { return height_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<Scalar> as_constant() const;
  Scalar constant_term() const;
  ExpPoly without_constant() const;

  /// One single-term polynomial per stored term, in map order.
  std::vector<ExpPoly> summands() const;

  /// exp(g) for a term key read as a product of atoms exp(s_1)*...*exp(s_k),
  /// the s_j being the summands of g, sorted by (height, rendered body).
  static std::vector<ExpPoly> atoms(const TermKey& key);

  /// Change of variables x_i -> factors[i] * x_i, applied recursively.
  ExpPoly scale_variables(const std::vector<Rational>& factors) const;

  std::vector<LogConstant> log_constants() const;

  /// Deterministic, parseable text.
  std::string render() const;

  friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b);
  friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b);
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
  friend ExpPoly operator*(const Scalar& c, const ExpPoly& p);
  ExpPoly operator-() const;
  ExpPoly pow(unsigned k) const;

  friend int compare(const ExpPoly& a, const ExpPoly& b);
  friend bool operator==(const ExpPoly& a, const ExpPoly& b) { return compare(a, b) == 0; }
  friend bool operator!=(const ExpPoly& a, const ExpPoly& b) { return compare(a, b) != 0; }
  friend bool operator<(const ExpPoly& a, const ExpPoly& b) { return compare(a, b) < 0; }

 private:
  void add_term(const TermKey& key, const Scalar& c);
  void refresh_height();

  VarList vars_;
  TermMap terms_;
  unsigned height_ = 0;
};

enum class RingOp { Add, Sub, Mul, Neg };

/// Ring operation on normal forms; Neg ignores q. Throws ContextError when
/// the variable lists differ.
ExpPoly ring_op(RingOp kind, const ExpPoly& p, const ExpPoly& q);

inline unsigned height(const ExpPoly& p) { return p.height(); }

/// (k, g) with p = k * exp(g), when p is a single term without variable
/// powers. Throws DegenerateInputError for p = 0.
std::optional<std::pair<Scalar, ExpPoly>> as_pure_exponential(const ExpPoly& p);

/// Text of a single term, without the leading sign handling of sums.
std::string render_term(const TermKey& key, const Scalar& c, const VarList& vars);

}  // namespace expzero
