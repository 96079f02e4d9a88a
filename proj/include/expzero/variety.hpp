#pragma once

// The witness variety V_p in G_alpha = K^alpha x (K*)^alpha, with
// coordinates (x_1..x_n, w_{n+1}..w_alpha, y_1..y_alpha).

#include <vector>

#include "expzero/decomposition.hpp"
#include "expzero/poly.hpp"

namespace expzero {

struct VarietySystem {
  std::size_t n = 0;
  std::size_t alpha = 0;
  VarList xvars;
  VarList names;               // x_1..x_n, y1..y_alpha
  std::vector<ExpPoly> bricks;  // t_1..t_alpha, t_i = x_i for i <= n
  std::vector<Poly> graph;      // p_{n+1}..p_alpha, possibly Laurent in y
  Poly hypersurface;            // p*, a polynomial
  /// p* = y^shift * (Laurent form of p); zero unless p has negative atoms.
  std::vector<int> shift;
  bool no_zeros = false;

  /// Index of y_j among the polynomial variables.
  std::size_t y_index(std::size_t j) const { return n + j; }
  std::size_t equation_count() const { return alpha - n + 1; }
};

struct GPoint {
  std::vector<Complex> x;  // n
  std::vector<Complex> w;  // alpha - n
  std::vector<Complex> y;  // alpha
};

/// Throws ContractError unless t is refined with L = 1, and
/// ConstructionError if the self-check reconstruct(V) == p fails.
VarietySystem build_variety(const ExpPoly& p, const Decomposition& t);

/// p* with y_j -> exp(t_j), divided by the recorded shift.
ExpPoly reconstruct(const VarietySystem& v);

/// f(x, exp(t_1), .., exp(t_alpha)) for a polynomial f in the system's
/// coordinates.
ExpPoly substitute_bricks(const VarietySystem& v, const Poly& f);

/// p_i with y_j -> exp(t_j); equals t_i on a valid system.
ExpPoly reconstruct_graph(const VarietySystem& v, std::size_t i);

/// The candidate point (a, t(a), exp(t(a))). Throws NumericRangeError on
/// overflow.
GPoint witness(const VarietySystem& v, const std::vector<Complex>& a, const BranchEnv* env = nullptr);

struct Membership {
  bool member = false;
  double residual = 0.0;
};

/// Residual: max over graph equations of |w_i - p_i| / (1 + |p_i|) and of
/// |p*|. Throws DomainError if some y is zero.
Membership membership(const VarietySystem& v, const GPoint& pt, double tol, const BranchEnv* env = nullptr);

struct XYPoint {
  std::vector<Complex> x;
  std::vector<Complex> y;
};

XYPoint project_phi(const GPoint& pt);
GPoint lift_phi(const VarietySystem& v, const XYPoint& xy, const BranchEnv* env = nullptr);

/// (x, y) concatenated as a polynomial evaluation point.
std::vector<Complex> xy_point(const std::vector<Complex>& x, const std::vector<Complex>& y);

}  // namespace expzero
