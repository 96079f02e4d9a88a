#include "expzero/reduction.hpp"

#include <algorithm>
#include <set>

#include "expzero/errors.hpp"
#include "expzero/qlinear.hpp"

namespace expzero {

std::string FreenessResult::render_b() const {
  if (b_den.is_one()) return b_num.render();
  return "(" + b_num.render() + ")/(" + b_den.render() + ")";
}

Factorization factor_pstar(const VarietySystem& v, const FactorBudget& budget) {
  if (v.hypersurface.is_zero()) throw ContractError("p* is zero");
  return factor(v.hypersurface, budget);
}

namespace {

bool uses_y(const VarietySystem& v, const Poly& q) {
  for (std::size_t k : q.used_variables())
    if (k >= v.n) return true;
  return false;
}

bool pure_y_monomial(const VarietySystem& v, const Poly& q) {
  if (!q.is_monomial()) return false;
  const auto& e = q.terms().begin()->first;
  return std::all_of(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(v.n), [](int k) { return k == 0; });
}

// Bricks used by q, closed under the graph polynomials, plus the variables.
std::vector<std::size_t> brick_closure(const VarietySystem& v, const Poly& q) {
  std::set<std::size_t> keep;
  for (std::size_t i = 0; i < v.n; ++i) keep.insert(i);
  std::vector<std::size_t> todo;
  for (std::size_t k : q.used_variables())
    if (k >= v.n) todo.push_back(k - v.n);
  while (!todo.empty()) {
    std::size_t j = todo.back();
    todo.pop_back();
    if (!keep.insert(j).second || j < v.n) continue;
    for (std::size_t k : v.graph[j - v.n].used_variables())
      if (k >= v.n) todo.push_back(k - v.n);
  }
  return {keep.begin(), keep.end()};
}

}  // namespace

Selection select_factor(const VarietySystem& v, const Factorization& f) {
  Selection out;
  for (const auto& fac : f.factors) {
    if (pure_y_monomial(v, fac.poly)) continue;
    out.factor = fac.poly;
    out.p_hat = substitute_bricks(v, fac.poly);
    if (!uses_y(v, fac.poly)) {
      out.kind = Selection::Kind::NoY;
      return out;
    }
    out.kind = Selection::Kind::Factor;
    Decomposition t;
    t.vars = v.xvars;
    t.n = v.n;
    t.L = 1;
    t.refined = true;
    for (std::size_t j : brick_closure(v, fac.poly)) t.bricks.push_back(Brick{v.bricks[j], v.bricks[j].height()});
    out.system = build_variety(*out.p_hat, t);
    return out;
  }
  return out;
}

FreenessResult freeness_check(const VarietySystem& v) {
  FreenessResult out;
  std::vector<qlin::QVector> flat;
  for (const auto& b : v.bricks) flat.push_back(qlin::flatten(b));
  if (qlin::rank(flat) != v.alpha) {
    out.tag = FreenessResult::Tag::NotFreeAdditive;
    return out;
  }
  const auto& terms = v.hypersurface.terms();
  if (terms.size() != 2) return out;
  const auto& [ea, ca] = *terms.rbegin();
  const auto& [eb, cb] = *terms.begin();
  for (std::size_t k = 0; k < v.n; ++k)
    if (ea[k] != 0 || eb[k] != 0) return out;
  out.tag = FreenessResult::Tag::NotFreeMultiplicative;
  out.m.resize(v.alpha);
  ExpPoly g(v.xvars);
  for (std::size_t j = 0; j < v.alpha; ++j) {
    out.m[j] = ea[v.n + j] - eb[v.n + j];
    if (out.m[j] != 0) g = g + Scalar(out.m[j]) * v.bricks[j];
  }
  out.b_num = -cb;
  out.b_den = ca;
  out.g = g;
  return out;
}

ExpPoly reduce_height(const FreenessResult& witness, long branch) {
  if (witness.tag != FreenessResult::Tag::NotFreeMultiplicative || !witness.g)
    throw ContractError("height reduction needs a multiplicative non-freeness witness");
  if (witness.b_num.is_zero()) throw ContractError("b = 0 cannot lie on a coset of the multiplicative group");
  const ExpPoly& g = *witness.g;
  Scalar log_b = Scalar::log(LogConstant(witness.b_num, witness.b_den, branch));
  return g - ExpPoly::constant(g.vars(), log_b);
}

std::size_t ReductionOutcome::reductions() const {
  return static_cast<std::size_t>(std::count_if(trace.begin(), trace.end(), [](const ReductionStep& s) {
    return s.kind == ReductionStep::Kind::Reduce;
  }));
}

std::vector<Complex> ReductionOutcome::map_back(const std::vector<Complex>& point) const {
  if (point.size() != scale.size()) throw ContextError("point does not match the number of variables");
  std::vector<Complex> out(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) out[i] = scale[i].get_d() * point[i];
  return out;
}

std::string tag_name(ReductionOutcome::Tag t) {
  switch (t) {
    case ReductionOutcome::Tag::FreeSystem:
      return "FreeSystem";
    case ReductionOutcome::Tag::Polynomial:
      return "Polynomial";
    case ReductionOutcome::Tag::NoZeros:
      return "NoZeros";
  }
  return "";
}

std::string tag_name(FreenessResult::Tag t) {
  switch (t) {
    case FreenessResult::Tag::Free:
      return "Free";
    case FreenessResult::Tag::NotFreeMultiplicative:
      return "NotFreeMultiplicative";
    case FreenessResult::Tag::NotFreeAdditive:
      return "NotFreeAdditive";
  }
  return "";
}

std::string tag_name(ReductionStep::Kind k) {
  switch (k) {
    case ReductionStep::Kind::Reduce:
      return "reduce";
    case ReductionStep::Kind::Free:
      return "free";
    case ReductionStep::Kind::PolynomialFactor:
      return "polynomial_factor";
    case ReductionStep::Kind::NoZeros:
      return "no_zeros";
  }
  return "";
}

namespace {

std::vector<std::string> rendered(const Factorization& f) {
  std::vector<std::string> out;
  for (const auto& fac : f.factors) {
    std::string s = fac.poly.render();
    if (fac.multiplicity > 1) s = "(" + s + ")^" + std::to_string(fac.multiplicity);
    out.push_back(s);
  }
  return out;
}

}  // namespace

ReductionOutcome free_or_poly_loop(const ExpPoly& p, const ReductionConfig& config) {
  if (p.is_constant()) throw DegenerateInputError("reduction needs a nonconstant p");
  ReductionOutcome out;
  out.scale.assign(p.nvars(), Rational(1));
  ExpPoly cur = p;
  unsigned h0 = p.height();

  auto no_zeros = [&out](const ExpPoly& q) {
    out.tag = ReductionOutcome::Tag::NoZeros;
    out.final_p = q;
    if (auto pe = as_pure_exponential(q)) out.certificate = pe->second;
    return out;
  };

  for (unsigned iter = 0;; ++iter) {
    if (iter > h0) throw ConstructionError("reduction loop exceeded height(p) + 1 iterations");
    if (cur.height() == 0) {
      out.tag = ReductionOutcome::Tag::Polynomial;
      out.polynomial = cur;
      out.final_p = cur;
      return out;
    }
    if (as_pure_exponential(cur)) return no_zeros(cur);

    auto nd = normalize_L(refine(extract_decomposition(cur)));
    cur = nd.substitution.apply(cur);
    for (std::size_t i = 0; i < out.scale.size(); ++i) out.scale[i] *= nd.substitution.factors[i];
    VarietySystem v = build_variety(cur, nd.decomposition);
    if (v.no_zeros) return no_zeros(cur);

    Factorization f = factor_pstar(v, config.budget);
    Selection sel = select_factor(v, f);

    ReductionStep step;
    step.input = cur.render();
    step.pstar = v.hypersurface.render();
    step.factors = rendered(f);
    step.height_before = cur.height();
    if (sel.kind == Selection::Kind::AllMonomial) {
      step.kind = ReductionStep::Kind::NoZeros;
      out.trace.push_back(step);
      return no_zeros(cur);
    }
    step.chosen = sel.factor.render();
    const ExpPoly& p_hat = *sel.p_hat;
    step.result = p_hat.render();
    step.height_after = p_hat.height();

    if (sel.kind == Selection::Kind::NoY) {
      step.kind = ReductionStep::Kind::PolynomialFactor;
      out.trace.push_back(step);
      out.tag = ReductionOutcome::Tag::Polynomial;
      out.polynomial = p_hat;
      out.final_p = p_hat;
      return out;
    }

    FreenessResult fr = freeness_check(*sel.system);
    if (fr.tag == FreenessResult::Tag::NotFreeAdditive)
      throw ConstructionError("additive non-freeness on a refined decomposition");
    if (fr.is_free()) {
      step.kind = ReductionStep::Kind::Free;
      out.trace.push_back(step);
      out.tag = ReductionOutcome::Tag::FreeSystem;
      out.system = *sel.system;
      out.final_p = p_hat;
      return out;
    }

    // log[0](1) = 0 can leave exp(g) = 0; then a non-zero logarithm of 1 is taken.
    long branch = config.branch;
    ExpPoly next = reduce_height(fr, branch);
    if (branch == 0 && fr.b_num == fr.b_den && as_pure_exponential(next)) next = reduce_height(fr, branch = 1);
    step.kind = ReductionStep::Kind::Reduce;
    step.m = fr.m;
    step.b = fr.render_b();
    step.branch = branch;
    step.result = next.render();
    step.height_after = next.height();
    if (next.height() >= step.height_before) throw ConstructionError("height reduction did not lower the height");
    out.trace.push_back(step);
    cur = next;
  }
}

}  // namespace expzero
