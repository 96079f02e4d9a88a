#include "expzero/decomposition.hpp"

#include <algorithm>

#include "expzero/errors.hpp"
#include "expzero/qlinear.hpp"

namespace expzero {

bool Substitution::is_identity() const {
  return std::all_of(factors.begin(), factors.end(), [](const Rational& f) { return f == 1; });
}

namespace {

// Summand c*x_i with c a rational number.
std::optional<std::pair<std::size_t, Rational>> rational_linear(const ExpPoly& s) {
  if (s.terms().size() != 1) return std::nullopt;
  const auto& [key, c] = *s.terms().begin();
  if (key.exponent || key.degree() != 1) return std::nullopt;
  auto g = c.as_gauss();
  if (!g || !g->is_real()) return std::nullopt;
  auto it = std::find(key.powers.begin(), key.powers.end(), 1u);
  return std::make_pair(static_cast<std::size_t>(it - key.powers.begin()), g->re());
}

struct Harvest {
  std::vector<ExpPoly> candidates;
  mpz_class L = 1;

  void add(const ExpPoly& s) {
    if (auto lin = rational_linear(s)) {
      mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), lin->second.get_den_mpz_t());
      return;
    }
    if (std::find(candidates.begin(), candidates.end(), s) == candidates.end()) candidates.push_back(s);
  }

  void visit(const ExpPoly& p) {
    for (const auto& [key, c] : p.terms()) {
      if (!key.exponent) continue;
      visit(*key.exponent);
      for (const auto& s : key.exponent->summands()) add(s);
    }
  }
};

std::vector<ExpPoly> bodies(const std::vector<Brick>& bricks) {
  std::vector<ExpPoly> out;
  out.reserve(bricks.size());
  for (const auto& b : bricks) out.push_back(b.body);
  return out;
}

std::vector<qlin::QVector> flat(const std::vector<Brick>& bricks, std::size_t skip) {
  std::vector<qlin::QVector> out;
  for (std::size_t k = 0; k < bricks.size(); ++k)
    if (k != skip) out.push_back(qlin::flatten(bricks[k].body));
  return out;
}

Brick make_brick(ExpPoly body) {
  unsigned h = body.height();
  return Brick{std::move(body), h};
}

}  // namespace

Decomposition extract_decomposition(const ExpPoly& p) {
  if (p.is_constant()) throw DegenerateInputError("constant exponential polynomial has no decomposition");
  Harvest h;
  h.visit(p);

  Decomposition t;
  t.vars = p.vars();
  t.n = p.nvars();
  t.L = h.L;
  for (std::size_t i = 0; i < t.n; ++i) {
    ExpPoly x = ExpPoly::variable(t.vars, i);
    t.bricks.push_back(make_brick(Scalar(Rational(1, 1) / Rational(t.L)) * x));
  }
  std::vector<Brick> rest;
  for (auto& c : h.candidates) rest.push_back(make_brick(c));
  std::stable_sort(rest.begin(), rest.end(),
                   [](const Brick& a, const Brick& b) { return a.height < b.height; });
  for (auto& b : rest) t.bricks.push_back(std::move(b));

  // Greedy minimality: a brick that is an integer combination of the rest
  // is generated multiplicatively by them.
  for (std::size_t k = t.n; k < t.bricks.size();) {
    if (qlin::in_integer_span(flat(t.bricks, k), qlin::flatten(t.bricks[k].body))) {
      t.bricks.erase(t.bricks.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
      ++k;
    }
  }
  t.refined = is_refined(t);
  return t;
}

Decomposition refine(const Decomposition& input) {
  Decomposition t = input;
  std::size_t budget = t.bricks.size() + 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = t.bricks.size(); k-- > t.n;) {
      auto coeffs = qlin::solve(flat(t.bricks, k), qlin::flatten(t.bricks[k].body));
      if (!coeffs) continue;
      if (budget-- == 0) throw ConstructionError("refinement did not terminate");
      mpz_class lp = 1;
      for (const auto& c : *coeffs) mpz_lcm(lp.get_mpz_t(), lp.get_mpz_t(), c.get_den_mpz_t());
      if (lp != 1) {
        Scalar shrink(Rational(1) / Rational(lp));
        bool touches_vars = false;
        for (std::size_t j = 0, idx = 0; j < t.bricks.size(); ++j) {
          if (j == k) continue;
          if (sgn((*coeffs)[idx++]) == 0) continue;
          if (j < t.n) {
            touches_vars = true;
          } else {
            t.bricks[j] = make_brick(shrink * t.bricks[j].body);
          }
        }
        if (touches_vars) {
          for (std::size_t j = 0; j < t.n; ++j) t.bricks[j] = make_brick(shrink * t.bricks[j].body);
          t.L *= lp;
        }
      }
      t.bricks.erase(t.bricks.begin() + static_cast<std::ptrdiff_t>(k));
      changed = true;
      break;
    }
  }
  t.refined = true;
  return t;
}

NormalizedDecomposition normalize_L(const Decomposition& t) {
  if (!t.refined) throw ContractError("normalize_L expects a refined decomposition");
  NormalizedDecomposition out;
  out.substitution.factors.assign(t.n, Rational(t.L));
  out.decomposition = t;
  if (t.L == 1) return out;
  for (auto& b : out.decomposition.bricks) b = make_brick(out.substitution.apply(b.body));
  out.decomposition.L = 1;
  return out;
}

bool is_refined(const Decomposition& t) {
  return qlin::rank(flat(t.bricks, t.bricks.size())) == t.bricks.size();
}

std::vector<std::string> brick_strings(const Decomposition& t) {
  std::vector<std::string> out;
  for (const auto& b : bodies(t.bricks)) out.push_back(b.render());
  return out;
}

}  // namespace expzero
