#include "expzero/variety.hpp"

#include <algorithm>

#include "expzero/errors.hpp"
#include "expzero/numeric.hpp"
#include "expzero/qlinear.hpp"

namespace expzero {

namespace {

// Integer exponents m with body = sum m_j * bricks[j], j < limit.
std::vector<int> brick_exponents(const ExpPoly& body, const std::vector<qlin::QVector>& basis, std::size_t limit) {
  std::vector<qlin::QVector> sub(basis.begin(), basis.begin() + static_cast<std::ptrdiff_t>(limit));
  auto c = qlin::solve(sub, qlin::flatten(body));
  if (!c) throw ConstructionError("exponent " + body.render() + " is not generated by the decomposition");
  std::vector<int> out;
  for (const auto& r : *c) {
    if (!qlin::is_integer(r)) throw ConstructionError("exponent " + body.render() + " needs a fractional brick power");
    out.push_back(static_cast<int>(r.get_num().get_si()));
  }
  out.resize(basis.size(), 0);
  return out;
}

// p with every exp(g) rewritten as a Laurent monomial in y.
Poly to_laurent(const ExpPoly& p, const VarietySystem& v, const std::vector<qlin::QVector>& basis,
                std::size_t limit) {
  Poly out(v.names);
  for (const auto& [key, c] : p.terms()) {
    Exponents e(v.n + v.alpha, 0);
    for (std::size_t k = 0; k < v.n; ++k) e[k] = static_cast<int>(key.powers[k]);
    if (key.exponent) {
      if (!key.exponent->constant_term().is_zero())
        throw ConstructionError("exponent with a constant summand");
      auto m = brick_exponents(*key.exponent, basis, limit);
      for (std::size_t j = 0; j < v.alpha; ++j) e[v.n + j] = m[j];
    }
    out.add_term(e, c);
  }
  return out;
}

ExpPoly substitute(const Poly& f, const VarietySystem& v, const std::vector<int>& shift) {
  ExpPoly out(v.xvars);
  for (const auto& [e, c] : f.terms()) {
    TermKey key{std::vector<unsigned>(v.n, 0), nullptr};
    for (std::size_t k = 0; k < v.n; ++k) {
      if (e[k] < 0) throw ConstructionError("negative power of a variable");
      key.powers[k] = static_cast<unsigned>(e[k]);
    }
    ExpPoly g(v.xvars);
    for (std::size_t j = 0; j < v.alpha; ++j) {
      int k = e[v.n + j] - (shift.empty() ? 0 : shift[j]);
      if (k != 0) g = g + Scalar(k) * v.bricks[j];
    }
    out = out + ExpPoly::term(v.xvars, key, c) * ExpPoly::exp(g);
  }
  return out;
}

void check_y(const std::vector<Complex>& y) {
  for (const auto& c : y)
    if (c == Complex(0.0)) throw DomainError("y coordinate is zero, outside the multiplicative group");
}

}  // namespace

VarietySystem build_variety(const ExpPoly& p, const Decomposition& t) {
  if (!t.refined || !is_refined(t)) throw ContractError("build_variety needs a refined decomposition");
  if (t.L != 1) throw ContractError("build_variety needs L = 1; apply normalize_L first");
  if (p.is_constant()) throw DegenerateInputError("build_variety needs a nonconstant p");
  if (!same_vars(p.vars(), t.vars)) throw ContextError("decomposition and p use different variables");

  VarietySystem v;
  v.n = t.n;
  v.alpha = t.alpha();
  v.xvars = t.vars;
  v.names = xy_names(t.vars, v.alpha);
  for (const auto& b : t.bricks) v.bricks.push_back(b.body);
  for (std::size_t i = 0; i < v.n; ++i)
    if (v.bricks[i] != ExpPoly::variable(v.xvars, i)) throw ContractError("leading bricks must be the variables");

  std::vector<qlin::QVector> basis;
  for (const auto& b : v.bricks) basis.push_back(qlin::flatten(b));

  for (std::size_t i = v.n; i < v.alpha; ++i) v.graph.push_back(to_laurent(v.bricks[i], v, basis, i));

  Poly laurent = to_laurent(p, v, basis, v.alpha);
  v.shift.assign(v.alpha, 0);
  for (std::size_t j = 0; j < v.alpha; ++j) v.shift[j] = std::max(0, -laurent.min_degree(v.n + j));
  Exponents s(v.n + v.alpha, 0);
  for (std::size_t j = 0; j < v.alpha; ++j) s[v.n + j] = v.shift[j];
  v.hypersurface = laurent.shifted(s);

  if (v.hypersurface.is_monomial()) {
    const auto& e = v.hypersurface.terms().begin()->first;
    v.no_zeros = std::all_of(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(v.n), [](int k) { return k == 0; });
  }

  if (reconstruct(v) != p) throw ConstructionError("reconstruction of p from p* failed for " + p.render());
  for (std::size_t i = v.n; i < v.alpha; ++i)
    if (reconstruct_graph(v, i) != v.bricks[i]) throw ConstructionError("graph polynomial check failed");
  return v;
}

ExpPoly substitute_bricks(const VarietySystem& v, const Poly& f) { return substitute(f, v, {}); }

ExpPoly reconstruct(const VarietySystem& v) { return substitute(v.hypersurface, v, v.shift); }

ExpPoly reconstruct_graph(const VarietySystem& v, std::size_t i) {
  if (i < v.n) return v.bricks.at(i);
  return substitute(v.graph.at(i - v.n), v, {});
}

GPoint witness(const VarietySystem& v, const std::vector<Complex>& a, const BranchEnv* env) {
  if (a.size() != v.n) throw ContextError("witness point has the wrong length");
  GPoint pt;
  pt.x = a;
  for (std::size_t i = 0; i < v.alpha; ++i) {
    Complex t = eval_complex(v.bricks[i], a, env);
    if (i >= v.n) pt.w.push_back(t);
    pt.y.push_back(checked_exp(t));
  }
  return pt;
}

std::vector<Complex> xy_point(const std::vector<Complex>& x, const std::vector<Complex>& y) {
  std::vector<Complex> out(x);
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

Membership membership(const VarietySystem& v, const GPoint& pt, double tol, const BranchEnv* env) {
  if (pt.x.size() != v.n || pt.w.size() != v.alpha - v.n || pt.y.size() != v.alpha)
    throw ContextError("point does not match the system dimensions");
  check_y(pt.y);
  auto xy = xy_point(pt.x, pt.y);
  double r = 0.0;
  for (std::size_t i = 0; i < v.graph.size(); ++i) {
    Complex rhs = v.graph[i].eval(xy, env);
    r = std::max(r, std::abs(pt.w[i] - rhs) / (1.0 + std::abs(rhs)));
  }
  r = std::max(r, std::abs(v.hypersurface.eval(xy, env)));
  return Membership{r <= tol, r};
}

XYPoint project_phi(const GPoint& pt) { return XYPoint{pt.x, pt.y}; }

GPoint lift_phi(const VarietySystem& v, const XYPoint& xy, const BranchEnv* env) {
  check_y(xy.y);
  GPoint pt{xy.x, {}, xy.y};
  auto at = xy_point(xy.x, xy.y);
  for (const auto& g : v.graph) pt.w.push_back(g.eval(at, env));
  return pt;
}

}  // namespace expzero
