#pragma once

// The [C] transform and numeric rank probes estimating dim([C](V)) from the
// differential of a local parameterization of V.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "expzero/variety.hpp"

namespace expzero {

struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<long> data;  // row major

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  static IntMatrix identity(std::size_t k);

  long& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  long operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  /// Exact rank over Q.
  std::size_t rank() const;
  std::string render() const;
};

struct CPoint {
  std::vector<Complex> u;
  std::vector<Complex> v;
};

/// u = C z, v_i = prod_j y_j^{c_ij}. Throws DomainError on a zero y.
CPoint apply_C(const IntMatrix& c, const std::vector<Complex>& z, const std::vector<Complex>& y);

/// Additive coordinates (x, w) of a point, in brick order.
std::vector<Complex> additive_coordinates(const GPoint& pt);

struct SampleOptions {
  std::map<std::size_t, Complex> pinned_x;  // x_i held fixed instead of drawn
  std::size_t max_attempts = 50;
  double tol = 1e-9;
};

/// A random point of V on the hypersurface p* = 0. Throws SamplingError
/// after max_attempts degenerate draws.
GPoint sample_variety_point(const VarietySystem& v, std::mt19937_64& rng, const SampleOptions& options = {});

struct ProbeConfig {
  std::size_t samples = 5;
  double rank_tol = 1e-8;  // relative to the largest singular value
  SampleOptions sampling;
};

struct RankEstimate {
  std::size_t rank = 0;
  std::size_t samples_used = 0;
  std::size_t degenerate = 0;
  std::size_t parameters = 0;  // dimension of the local parameterization
};

/// Max over samples of the numeric rank of d([C] o param). Throws
/// ContractError if C is not of full row rank or has the wrong width, and
/// ProbeInconclusiveError if every sample is degenerate.
RankEstimate image_rank_probe(const VarietySystem& v, const IntMatrix& c, std::mt19937_64& rng,
                              const ProbeConfig& config = {});

struct RotundityConfig {
  std::size_t trials = 100;
  long max_entry = 3;
  std::uint64_t seed = 0;
  ProbeConfig probe;
};

struct MatrixRecord {
  std::size_t trial = 0;
  IntMatrix c;
  std::size_t r = 0;
  std::size_t samples = 0;
  std::size_t rank = 0;
  bool pass = false;
  bool inconclusive = false;
  std::string warning;
};

struct RotundityReport {
  std::uint64_t seed = 0;
  std::size_t alpha = 0;
  std::size_t n = 0;
  long max_entry = 0;
  std::size_t identity_rank = 0;
  std::size_t expected_dimension = 0;  // alpha + n - 1
  std::vector<MatrixRecord> records;
  std::size_t inconclusive = 0;
  bool pass = false;
};

/// Random full-rank integer matrix with 1 <= r <= cols rows and entries in
/// [-max_entry, max_entry].
IntMatrix random_full_rank(std::size_t cols, long max_entry, std::mt19937_64& rng);

/// Throws ContractError unless freeness_check(V) reports Free. Trial k uses
/// its own generator seeded from (seed, k).
RotundityReport rotundity_probe(const VarietySystem& v, const RotundityConfig& config = {});

}  // namespace expzero
