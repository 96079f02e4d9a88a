#pragma once

// Complex evaluation of exponential polynomials and damped Newton root
// finding on one-variable restrictions.

#include <cstdint>
#include <optional>
#include <vector>

#include "expzero/exppoly.hpp"

namespace expzero {

/// exp(z), throwing NumericRangeError when |Re z| > 700.
Complex checked_exp(Complex z);

Complex eval_complex(const ExpPoly& p, const std::vector<Complex>& point, const BranchEnv* env = nullptr);

/// Value and gradient by forward-mode differentiation.
Complex eval_gradient(const ExpPoly& p, const std::vector<Complex>& point, std::vector<Complex>& grad,
                      const BranchEnv* env = nullptr);

struct RootConfig {
  std::size_t max_iter = 100;
  double tol = 1e-10;
  std::size_t grid = 7;  // extra seeds on a grid x grid lattice in [-3, 3]^2
  std::uint64_t seed = 0;
  std::size_t restarts = 8;  // fresh random freezes for multivariate p
};

struct RootResult {
  enum class Tag { Root, NoZeros, NotFound };

  Tag tag = Tag::NotFound;
  std::vector<Complex> assignment;
  double residual = 0.0;
  std::size_t iterations = 0;
  std::size_t seeds_tried = 0;
  std::size_t variable = 0;  // index solved for
  std::optional<ExpPoly> certificate;  // g with p = k*exp(g)
};

/// Throws DegenerateInputError on constant p.
RootResult find_root(const ExpPoly& p, const RootConfig& config = {}, const BranchEnv* env = nullptr);

struct RootCheck {
  bool ok = false;
  double residual = 0.0;
};

RootCheck verify_root(const ExpPoly& p, const std::vector<Complex>& point, const BranchEnv* env, double tol);

/// Seeds in the order they are tried.
std::vector<Complex> root_seeds(std::size_t grid);

}  // namespace expzero
