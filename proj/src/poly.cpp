#include "expzero/poly.hpp"

#include <algorithm>
#include <numeric>

#include "expzero/errors.hpp"

namespace expzero {

Poly::Poly(VarList names) : names_(std::move(names)) {}

Poly Poly::constant(VarList names, const Scalar& c) {
  Poly p(names);
  p.add_term(Exponents(p.nvars(), 0), c);
  return p;
}

Poly Poly::variable(VarList names, std::size_t index) {
  Poly p(names);
  Exponents e(p.nvars(), 0);
  e.at(index) = 1;
  p.add_term(e, Scalar(1));
  return p;
}

Poly Poly::monomial(VarList names, Exponents e, const Scalar& c) {
  Poly p(names);
  p.add_term(e, c);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

bool Poly::is_polynomial() const {
  for (const auto& [e, c] : terms_)
    if (std::any_of(e.begin(), e.end(), [](int k) { return k < 0; })) return false;
  return true;
}

int Poly::degree(std::size_t var) const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    d = first ? e[var] : std::max(d, e[var]);
    first = false;
  }
  return d;
}

int Poly::min_degree(std::size_t var) const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    d = first ? e[var] : std::min(d, e[var]);
    first = false;
  }
  return d;
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

std::vector<std::size_t> Poly::used_variables() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < nvars(); ++v)
    for (const auto& [e, c] : terms_)
      if (e[v] != 0) {
        out.push_back(v);
        break;
      }
  return out;
}

void Poly::add_term(const Exponents& e, const Scalar& c) {
  if (e.size() != nvars()) throw ContextError("monomial arity does not match polynomial");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::shifted(const Exponents& s) const {
  Poly out(names_);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    for (std::size_t k = 0; k < f.size(); ++k) f[k] += s[k];
    out.terms_.emplace(std::move(f), c);
  }
  return out;
}

Poly Poly::pow(unsigned k) const {
  Poly out = constant(names_, Scalar(1));
  for (unsigned j = 0; j < k; ++j) out = out * *this;
  return out;
}

namespace {

Complex ipow(Complex z, int k) {
  if (k < 0) return Complex(1.0) / ipow(z, -k);
  Complex r(1.0);
  for (int j = 0; j < k; ++j) r *= z;
  return r;
}

void require_arity(const Poly& p, const std::vector<Complex>& point) {
  if (point.size() != p.nvars()) throw ContextError("evaluation point has the wrong length");
}

}  // namespace

Complex Poly::eval(const std::vector<Complex>& point, const BranchEnv* env) const {
  require_arity(*this, point);
  Complex sum(0.0);
  for (const auto& [e, c] : terms_) {
    Complex t = c.to_complex(env);
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k] != 0) t *= ipow(point[k], e[k]);
    sum += t;
  }
  return sum;
}

Complex Poly::eval_gradient(const std::vector<Complex>& point, std::vector<Complex>& grad,
                            const BranchEnv* env) const {
  require_arity(*this, point);
  grad.assign(nvars(), Complex(0.0));
  Complex sum(0.0);
  for (const auto& [e, c] : terms_) {
    Complex coeff = c.to_complex(env);
    Complex t = coeff;
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k] != 0) t *= ipow(point[k], e[k]);
    sum += t;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      Complex d = coeff * static_cast<double>(e[v]);
      for (std::size_t k = 0; k < e.size(); ++k) {
        int power = k == v ? e[k] - 1 : e[k];
        if (power != 0) d *= ipow(point[k], power);
      }
      grad[v] += d;
    }
  }
  return sum;
}

std::string Poly::render() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponents, Scalar>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    int da = std::accumulate(a.first.begin(), a.first.end(), 0);
    int db = std::accumulate(b.first.begin(), b.first.end(), 0);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::string out;
  for (const auto& [e, c] : ordered) {
    std::string mono;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += (*names_)[k];
      if (e[k] < 0) {
        mono += "^(" + std::to_string(e[k]) + ")";
      } else if (e[k] != 1) {
        mono += "^" + std::to_string(e[k]);
      }
    }
    std::string term;
    bool negative = c.looks_negative();
    Scalar mag = negative ? -c : c;
    if (mono.empty()) {
      term = mag.render();
    } else if (mag.is_one()) {
      term = mono;
    } else {
      term = mag.render_factor() + "*" + mono;
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " + term : " + " + term;
    }
  }
  return out;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly out = a;
  if (!out.names_) out.names_ = b.names_;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

Poly Poly::operator-() const {
  Poly out(names_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  Poly out(a.names_ ? a.names_ : b.names_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e = ea;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Poly operator*(const Scalar& c, const Poly& p) {
  Poly out(p.names_);
  if (c.is_zero()) return out;
  for (const auto& [e, k] : p.terms_) out.terms_.emplace(e, c * k);
  return out;
}

VarList xy_names(const VarList& xs, std::size_t alpha) {
  std::vector<std::string> names(xs->begin(), xs->end());
  std::string prefix = "y";
  auto clashes = [&names, &prefix, alpha] {
    for (std::size_t j = 1; j <= alpha; ++j)
      if (std::find(names.begin(), names.end(), prefix + std::to_string(j)) != names.end()) return true;
    return false;
  };
  while (clashes()) prefix += "_";
  for (std::size_t j = 1; j <= alpha; ++j) names.push_back(prefix + std::to_string(j));
  return make_vars(std::move(names));
}

}  // namespace expzero
