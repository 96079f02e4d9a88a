#pragma once

// Exact coefficient field used by every symbolic module: Gaussian rationals
// extended by formally independent logarithm constants log(c).

#include <gmpxx.h>

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace expzero {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Rational with a rational imaginary part.
class GaussQ {
 public:
  GaussQ() = default;
  GaussQ(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussQ(Rational re) : re_(std::move(re)) {  // NOLINT(google-explicit-constructor)
    re_.canonicalize();
  }
  GaussQ(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussQ imaginary_unit() { return GaussQ(Rational(0), Rational(1)); }

  const Rational& re() const noexcept { return re_; }
  const Rational& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussQ conj() const { return GaussQ(re_, -im_); }
  /// Throws ContractError on zero.
  GaussQ inverse() const;

  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// Parseable text; numbers with both parts come out parenthesized.
  std::string render() const;

  friend GaussQ operator+(const GaussQ& a, const GaussQ& b) {
    return GaussQ(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend GaussQ operator-(const GaussQ& a, const GaussQ& b) {
    return GaussQ(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
    return GaussQ(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend GaussQ operator/(const GaussQ& a, const GaussQ& b) { return a * b.inverse(); }
  GaussQ operator-() const { return GaussQ(-re_, -im_); }
  GaussQ& operator+=(const GaussQ& o) { return *this = *this + o; }
  GaussQ& operator-=(const GaussQ& o) { return *this = *this - o; }
  GaussQ& operator*=(const GaussQ& o) { return *this = *this * o; }

  friend bool operator==(const GaussQ& a, const GaussQ& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend int compare(const GaussQ& a, const GaussQ& b) {
    if (int c = cmp(a.re_, b.re_)) return c < 0 ? -1 : 1;
    if (int c = cmp(a.im_, b.im_)) return c < 0 ? -1 : 1;
    return 0;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

class Scalar;
struct LogData;

/// log(num/den) on a fixed branch: principal value + 2*pi*i*branch.
/// Two constants are equal only if numerator, denominator and branch agree.
/// Scalar::log folds the principal log(1) to 0.
class LogConstant {
 public:
  /// Throws ContractError if the ratio is zero or the denominator vanishes.
  LogConstant(const Scalar& num, const Scalar& den, long branch = 0);

  const Scalar& numerator() const;
  const Scalar& denominator() const;
  long branch() const;

  LogConstant with_branch(long branch) const;

  std::string render() const;

  friend int compare(const LogConstant& a, const LogConstant& b);
  friend bool operator==(const LogConstant& a, const LogConstant& b) {
    return compare(a, b) == 0;
  }
  friend bool operator<(const LogConstant& a, const LogConstant& b) {
    return compare(a, b) < 0;
  }

 private:
  std::shared_ptr<const LogData> d_;
};

/// Branch overrides for log constants during numeric evaluation. A constant
/// without an entry is evaluated on its own stored branch.
using BranchEnv = std::map<LogConstant, long>;

/// Product of log constants with positive exponents, sorted by constant.
using LogMonomial = std::vector<std::pair<LogConstant, unsigned>>;

int compare(const LogMonomial& a, const LogMonomial& b);

struct LogMonomialLess {
  bool operator()(const LogMonomial& a, const LogMonomial& b) const { return compare(a, b) < 0; }
};

/// Element of Q(i)[log constants]. Immutable value type.
class Scalar {
 public:
  using TermMap = std::map<LogMonomial, GaussQ, LogMonomialLess>;

  Scalar() = default;
  Scalar(long v) : Scalar(GaussQ(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& v) : Scalar(GaussQ(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(const GaussQ& v);  // NOLINT(google-explicit-constructor)

  static Scalar log(const LogConstant& c);

  const TermMap& terms() const noexcept { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  /// The value when no log constant occurs.
  std::optional<GaussQ> as_gauss() const;
  bool has_logs() const;

  /// Only pure Gaussian rationals are units; anything else throws.
  Scalar inverse() const;

  /// Least common multiple of every rational denominator inside.
  mpz_class denominator_lcm() const;

  /// Every log constant occurring, sorted, without repeats.
  std::vector<LogConstant> log_constants() const;

  Complex to_complex(const BranchEnv* env = nullptr) const;

  std::string render() const;
  /// render(), parenthesized when it would not bind as a single factor.
  std::string render_factor() const;
  /// Single term whose coefficient is a negative rational or a negative
  /// multiple of i.
  bool looks_negative() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend int compare(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }

 private:
  TermMap terms_;
};

struct LogData {
  Scalar num;
  Scalar den;
  long branch = 0;
};

Complex log_value(const LogConstant& c, const BranchEnv* env = nullptr);

}  // namespace expzero
