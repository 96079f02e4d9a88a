#pragma once

// Sparse multivariate polynomials over Scalar, used for the graph
// polynomials p_i and the hypersurface p*. Exponents are signed so that
// Laurent monomials in y can be represented before they are cleared.

#include <map>
#include <string>
#include <vector>

#include "expzero/exppoly.hpp"
#include "expzero/scalar.hpp"

namespace expzero {

using Exponents = std::vector<int>;

class Poly {
 public:
  using TermMap = std::map<Exponents, Scalar>;

  Poly() = default;
  explicit Poly(VarList names);

  static Poly constant(VarList names, const Scalar& c);
  static Poly variable(VarList names, std::size_t index);
  static Poly monomial(VarList names, Exponents e, const Scalar& c);

  const VarList& names() const noexcept { return names_; }
  std::size_t nvars() const noexcept { return names_ ? names_->size() : 0; }
  const TermMap& terms() const noexcept { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  /// No negative exponent anywhere.
  bool is_polynomial() const;

  int degree(std::size_t var) const;
  int min_degree(std::size_t var) const;
  int total_degree() const;
  /// Indices of variables with a nonzero exponent in some term.
  std::vector<std::size_t> used_variables() const;

  void add_term(const Exponents& e, const Scalar& c);

  /// Multiply by the monomial with exponent vector e.
  Poly shifted(const Exponents& e) const;
  Poly pow(unsigned k) const;

  Complex eval(const std::vector<Complex>& point, const BranchEnv* env = nullptr) const;
  /// Value plus all partial derivatives.
  Complex eval_gradient(const std::vector<Complex>& point, std::vector<Complex>& grad,
                        const BranchEnv* env = nullptr) const;

  /// Terms by descending total degree, then descending exponent vector.
  std::string render() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Scalar& c, const Poly& p);
  Poly operator-() const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  VarList names_;
  TermMap terms_;
};

/// Names x_1..x_n followed by y1..y_alpha.
VarList xy_names(const VarList& xs, std::size_t alpha);

}  // namespace expzero
