#include "expzero/scalar.hpp"

#include <algorithm>
#include <numbers>

#include "expzero/errors.hpp"

namespace expzero {

GaussQ GaussQ::inverse() const {
  if (is_zero()) throw ContractError("inverse of zero");
  Rational norm = re_ * re_ + im_ * im_;
  return GaussQ(re_ / norm, -im_ / norm);
}

std::string GaussQ::render() const {
  if (sgn(im_) == 0) return re_.get_str();
  auto imag = [](const Rational& v) -> std::string {
    if (v == 1) return "i";
    if (v == -1) return "-i";
    return v.get_str() + "*i";
  };
  if (sgn(re_) == 0) return imag(im_);
  std::string im_part = imag(abs(im_));
  return "(" + re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + im_part + ")";
}

// ---------------------------------------------------------------------------
// LogConstant

LogConstant::LogConstant(const Scalar& num, const Scalar& den, long branch) {
  if (den.is_zero()) throw ContractError("log constant with zero denominator");
  if (num.is_zero()) throw ContractError("log of zero");
  auto d = std::make_shared<LogData>();
  if (auto g = den.as_gauss()) {
    d->num = num * Scalar(g->inverse());
    d->den = Scalar(1);
  } else {
    d->num = num;
    d->den = den;
  }
  d->branch = branch;
  d_ = std::move(d);
}

const Scalar& LogConstant::numerator() const { return d_->num; }
const Scalar& LogConstant::denominator() const { return d_->den; }
long LogConstant::branch() const { return d_->branch; }

LogConstant LogConstant::with_branch(long branch) const {
  return LogConstant(d_->num, d_->den, branch);
}

std::string LogConstant::render() const {
  std::string head = d_->branch == 0 ? "log(" : "log[" + std::to_string(d_->branch) + "](";
  if (d_->den.is_one()) return head + d_->num.render() + ")";
  return head + "(" + d_->num.render() + ")/(" + d_->den.render() + "))";
}

int compare(const LogConstant& a, const LogConstant& b) {
  if (a.d_ == b.d_) return 0;
  if (int c = compare(a.d_->num, b.d_->num)) return c;
  if (int c = compare(a.d_->den, b.d_->den)) return c;
  if (a.d_->branch != b.d_->branch) return a.d_->branch < b.d_->branch ? -1 : 1;
  return 0;
}

int compare(const LogMonomial& a, const LogMonomial& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (int c = compare(a[k].first, b[k].first)) return c;
    if (a[k].second != b[k].second) return a[k].second < b[k].second ? -1 : 1;
  }
  return 0;
}

Complex log_value(const LogConstant& c, const BranchEnv* env) {
  long branch = c.branch();
  if (env) {
    if (auto it = env->find(c); it != env->end()) branch = it->second;
  }
  Complex ratio = c.numerator().to_complex(env) / c.denominator().to_complex(env);
  Complex principal = std::log(ratio);
  return {principal.real(), principal.imag() + 2.0 * std::numbers::pi * static_cast<double>(branch)};
}

// ---------------------------------------------------------------------------
// Scalar

namespace {

LogMonomial multiply(const LogMonomial& a, const LogMonomial& b) {
  LogMonomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

std::string render_monomial(const LogMonomial& m) {
  std::string s;
  for (const auto& [c, e] : m) {
    if (!s.empty()) s += "*";
    s += c.render();
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string render_term(const LogMonomial& m, const GaussQ& c) {
  if (m.empty()) return c.render();
  std::string mono = render_monomial(m);
  if (c.is_one()) return mono;
  if (c == GaussQ(-1)) return "-" + mono;
  return c.render() + "*" + mono;
}

}  // namespace

Scalar::Scalar(const GaussQ& v) {
  if (!v.is_zero()) terms_.emplace(LogMonomial{}, v);
}

Scalar Scalar::log(const LogConstant& c) {
  Scalar s;
  if (c.branch() == 0 && c.numerator() == c.denominator()) return s;
  s.terms_.emplace(LogMonomial{{c, 1u}}, GaussQ(1));
  return s;
}

bool Scalar::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second.is_one();
}

std::optional<GaussQ> Scalar::as_gauss() const {
  if (terms_.empty()) return GaussQ(0);
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

bool Scalar::has_logs() const {
  for (const auto& [m, c] : terms_)
    if (!m.empty()) return true;
  return false;
}

Scalar Scalar::inverse() const {
  auto g = as_gauss();
  if (!g) throw MalformedTermError("scalar " + render() + " is not invertible in this coefficient ring");
  return Scalar(g->inverse());
}

mpz_class Scalar::denominator_lcm() const {
  mpz_class l = 1;
  auto fold = [&l](const Rational& r) { mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den_mpz_t()); };
  for (const auto& [m, c] : terms_) {
    fold(c.re());
    fold(c.im());
  }
  return l;
}

std::vector<LogConstant> Scalar::log_constants() const {
  std::vector<LogConstant> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [lc, e] : m) out.push_back(lc);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Complex Scalar::to_complex(const BranchEnv* env) const {
  Complex sum{0.0, 0.0};
  for (const auto& [m, c] : terms_) {
    Complex t = c.to_complex();
    for (const auto& [lc, e] : m) {
      Complex v = log_value(lc, env);
      for (unsigned k = 0; k < e; ++k) t *= v;
    }
    sum += t;
  }
  return sum;
}

std::string Scalar::render() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    std::string t = render_term(m, c);
    if (s.empty()) {
      s = t;
    } else if (t.front() == '-') {
      s += " - " + t.substr(1);
    } else {
      s += " + " + t;
    }
  }
  return s;
}

std::string Scalar::render_factor() const {
  if (terms_.size() <= 1) return render();
  return "(" + render() + ")";
}

bool Scalar::looks_negative() const {
  if (terms_.size() != 1) return false;
  const GaussQ& c = terms_.begin()->second;
  if (c.is_real()) return sgn(c.re()) < 0;
  return sgn(c.re()) == 0 && sgn(c.im()) < 0;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar out = a;
  for (const auto& [m, c] : b.terms_) {
    auto [it, inserted] = out.terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) out.terms_.erase(it);
    }
  }
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      GaussQ c = ca * cb;
      auto [it, inserted] = out.terms_.emplace(multiply(ma, mb), c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) out.terms_.erase(it);
      }
    }
  }
  return out;
}

int compare(const Scalar& a, const Scalar& b) {
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (int c = compare(ia->first, ib->first)) return c;
    if (int c = compare(ia->second, ib->second)) return c;
  }
  if (ia == a.terms_.end() && ib == b.terms_.end()) return 0;
  return ia == a.terms_.end() ? -1 : 1;
}

}  // namespace expzero
