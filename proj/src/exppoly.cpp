#include "expzero/exppoly.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "expzero/errors.hpp"

namespace expzero {

VarList make_vars(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool same_vars(const VarList& a, const VarList& b) { return a == b || *a == *b; }

bool TermKey::is_constant() const {
  return !exponent && std::all_of(powers.begin(), powers.end(), [](unsigned e) { return e == 0; });
}

unsigned TermKey::degree() const { return std::accumulate(powers.begin(), powers.end(), 0u); }

int compare(const TermKey& a, const TermKey& b) {
  if (a.powers != b.powers) return a.powers < b.powers ? -1 : 1;
  if (a.exponent == b.exponent) return 0;
  if (!a.exponent) return -1;
  if (!b.exponent) return 1;
  return compare(*a.exponent, *b.exponent);
}

int compare(const ExpPoly& a, const ExpPoly& b) {
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (int c = compare(ia->first, ib->first)) return c;
    if (int c = compare(ia->second, ib->second)) return c;
  }
  if (ia == a.terms_.end() && ib == b.terms_.end()) return 0;
  return ia == a.terms_.end() ? -1 : 1;
}

ExpPoly::ExpPoly(VarList vars) : vars_(std::move(vars)) {}

ExpPoly ExpPoly::constant(VarList vars, const Scalar& c) {
  ExpPoly p(vars);
  p.add_term(TermKey{std::vector<unsigned>(vars->size(), 0), nullptr}, c);
  return p;
}

ExpPoly ExpPoly::variable(VarList vars, std::size_t index) {
  if (index >= vars->size()) throw ContextError("variable index out of range");
  TermKey key{std::vector<unsigned>(vars->size(), 0), nullptr};
  key.powers[index] = 1;
  ExpPoly p(vars);
  p.add_term(key, Scalar(1));
  p.refresh_height();
  return p;
}

ExpPoly ExpPoly::term(VarList vars, TermKey key, const Scalar& c) {
  if (key.powers.size() != vars->size()) throw ContextError("term arity does not match variables");
  if (key.exponent && key.exponent->is_zero()) key.exponent.reset();
  if (key.exponent && !same_vars(key.exponent->vars(), vars))
    throw ContextError("exponent over a different variable list");
  ExpPoly p(vars);
  p.add_term(key, c);
  p.refresh_height();
  return p;
}

ExpPoly ExpPoly::exp(const ExpPoly& g) {
  if (g.is_zero()) return constant(g.vars(), Scalar(1));
  Scalar c = g.constant_term();
  if (!c.is_zero()) {
    throw MalformedTermError("exp of a constant summand (" + c.render() +
                             ") is not an atom; multiply by a log-constant coefficient instead");
  }
  TermKey key{std::vector<unsigned>(g.nvars(), 0), std::make_shared<const ExpPoly>(g)};
  return term(g.vars(), std::move(key), Scalar(1));
}

void ExpPoly::add_term(const TermKey& key, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void ExpPoly::refresh_height() {
  height_ = 0;
  for (const auto& [k, c] : terms_)
    if (k.exponent) height_ = std::max(height_, k.exponent->height() + 1);
}

bool ExpPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
}

std::optional<Scalar> ExpPoly::as_constant() const {
  if (terms_.empty()) return Scalar(0);
  if (is_constant()) return terms_.begin()->second;
  return std::nullopt;
}

Scalar ExpPoly::constant_term() const {
  TermKey key{std::vector<unsigned>(nvars(), 0), nullptr};
  auto it = terms_.find(key);
  return it == terms_.end() ? Scalar(0) : it->second;
}

ExpPoly ExpPoly::without_constant() const {
  ExpPoly out = *this;
  out.terms_.erase(TermKey{std::vector<unsigned>(nvars(), 0), nullptr});
  return out;
}

std::vector<ExpPoly> ExpPoly::summands() const {
  std::vector<ExpPoly> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) out.push_back(term(vars_, k, c));
  return out;
}

std::vector<ExpPoly> ExpPoly::atoms(const TermKey& key) {
  if (!key.exponent) return {};
  std::vector<ExpPoly> out = key.exponent->summands();
  std::vector<std::pair<std::pair<unsigned, std::string>, std::size_t>> order;
  for (std::size_t k = 0; k < out.size(); ++k) order.push_back({{out[k].height(), out[k].render()}, k});
  std::sort(order.begin(), order.end());
  std::vector<ExpPoly> sorted;
  sorted.reserve(out.size());
  for (const auto& o : order) sorted.push_back(out[o.second]);
  return sorted;
}

ExpPoly ExpPoly::scale_variables(const std::vector<Rational>& factors) const {
  if (factors.size() != nvars()) throw ContextError("scale vector arity mismatch");
  ExpPoly out(vars_);
  for (const auto& [k, c] : terms_) {
    Rational f = 1;
    for (std::size_t i = 0; i < k.powers.size(); ++i)
      for (unsigned e = 0; e < k.powers[i]; ++e) f *= factors[i];
    TermKey nk{k.powers, nullptr};
    if (k.exponent) nk.exponent = std::make_shared<const ExpPoly>(k.exponent->scale_variables(factors));
    out.add_term(nk, c * Scalar(f));
  }
  out.refresh_height();
  return out;
}

std::vector<LogConstant> ExpPoly::log_constants() const {
  std::vector<LogConstant> out;
  for (const auto& [k, c] : terms_) {
    auto lc = c.log_constants();
    out.insert(out.end(), lc.begin(), lc.end());
    if (k.exponent) {
      auto inner = k.exponent->log_constants();
      out.insert(out.end(), inner.begin(), inner.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string render_term(const TermKey& key, const Scalar& c, const VarList& vars) {
  std::string mono;
  auto append = [&mono](const std::string& s) {
    if (!mono.empty()) mono += "*";
    mono += s;
  };
  for (std::size_t i = 0; i < key.powers.size(); ++i) {
    if (key.powers[i] == 0) continue;
    std::string v = (*vars)[i];
    if (key.powers[i] != 1) v += "^" + std::to_string(key.powers[i]);
    append(v);
  }
  for (const auto& atom : ExpPoly::atoms(key)) append("exp(" + atom.render() + ")");
  if (mono.empty()) return c.render();
  if (c.is_one()) return mono;
  if (c == Scalar(-1)) return "-" + mono;
  return c.render_factor() + "*" + mono;
}

std::string ExpPoly::render() const {
  if (terms_.empty()) return "0";
  // Higher terms first; ties by degree, then text.
  std::vector<std::tuple<unsigned, unsigned, std::string>> parts;
  for (const auto& [k, c] : terms_) {
    unsigned h = k.exponent ? k.exponent->height() + 1 : 0;
    parts.emplace_back(h, k.degree(), render_term(k, c, vars_));
  }
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) > std::get<1>(b);
    return std::get<2>(a) < std::get<2>(b);
  });
  std::string s;
  for (const auto& part : parts) {
    const std::string& t = std::get<2>(part);
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

namespace {

void check_context(const ExpPoly& a, const ExpPoly& b) {
  if (!same_vars(a.vars(), b.vars())) throw ContextError("operands use different variable lists");
}

std::shared_ptr<const ExpPoly> add_exponents(const std::shared_ptr<const ExpPoly>& g,
                                             const std::shared_ptr<const ExpPoly>& h) {
  if (!g) return h;
  if (!h) return g;
  ExpPoly s = *g + *h;
  if (s.is_zero()) return nullptr;
  return std::make_shared<const ExpPoly>(std::move(s));
}

}  // namespace

ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) {
  check_context(a, b);
  ExpPoly out = a;
  for (const auto& [k, c] : b.terms_) out.add_term(k, c);
  out.refresh_height();
  return out;
}

ExpPoly ExpPoly::operator-() const {
  ExpPoly out(vars_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
  out.height_ = height_;
  return out;
}

ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) { return a + (-b); }

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
  check_context(a, b);
  ExpPoly out(a.vars_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      TermKey k{ka.powers, add_exponents(ka.exponent, kb.exponent)};
      for (std::size_t i = 0; i < k.powers.size(); ++i) k.powers[i] += kb.powers[i];
      out.add_term(k, ca * cb);
    }
  }
  out.refresh_height();
  return out;
}

ExpPoly operator*(const Scalar& c, const ExpPoly& p) {
  ExpPoly out(p.vars_);
  for (const auto& [k, v] : p.terms_) out.add_term(k, c * v);
  out.refresh_height();
  return out;
}

ExpPoly ExpPoly::pow(unsigned k) const {
  ExpPoly result = constant(vars_, Scalar(1));
  ExpPoly base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

ExpPoly ring_op(RingOp kind, const ExpPoly& p, const ExpPoly& q) {
  switch (kind) {
    case RingOp::Add: return p + q;
    case RingOp::Sub: return p - q;
    case RingOp::Mul: return p * q;
    case RingOp::Neg: return -p;
  }
  throw ContractError("unknown ring operation");
}

std::optional<std::pair<Scalar, ExpPoly>> as_pure_exponential(const ExpPoly& p) {
  if (p.is_zero()) throw DegenerateInputError("as_pure_exponential is undefined on 0");
  if (p.terms().size() != 1) return std::nullopt;
  const auto& [k, c] = *p.terms().begin();
  if (k.degree() != 0) return std::nullopt;
  ExpPoly g = k.exponent ? *k.exponent : ExpPoly(p.vars());
  return std::make_pair(c, g);
}

}  // namespace expzero
