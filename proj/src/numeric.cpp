#include "expzero/numeric.hpp"

#include <cmath>
#include <random>

#include "expzero/errors.hpp"

namespace expzero {

Complex checked_exp(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z.real()) > 700.0)
    throw NumericRangeError("exponent with real part outside [-700, 700]");
  return std::exp(z);
}

namespace {

struct Dual {
  Complex v;
  std::vector<Complex> d;
};

Dual eval_dual(const ExpPoly& p, const std::vector<Complex>& x, const BranchEnv* env, bool grad) {
  std::size_t n = x.size();
  Dual out{Complex(0.0), std::vector<Complex>(grad ? n : 0, Complex(0.0))};
  for (const auto& [key, c] : p.terms()) {
    Complex coeff = c.to_complex(env);
    Complex mono = coeff;
    for (std::size_t k = 0; k < n; ++k)
      for (unsigned j = 0; j < key.powers[k]; ++j) mono *= x[k];
    Complex e(1.0);
    Dual inner;
    if (key.exponent) {
      inner = eval_dual(*key.exponent, x, env, grad);
      e = checked_exp(inner.v);
    }
    Complex value = mono * e;
    out.v += value;
    if (!grad) continue;
    for (std::size_t v = 0; v < n; ++v) {
      Complex dm(0.0);
      if (key.powers[v] > 0) {
        dm = coeff * static_cast<double>(key.powers[v]);
        for (std::size_t k = 0; k < n; ++k) {
          unsigned power = k == v ? key.powers[k] - 1 : key.powers[k];
          for (unsigned j = 0; j < power; ++j) dm *= x[k];
        }
      }
      Complex d = dm * e;
      if (key.exponent) d += value * inner.d[v];
      out.d[v] += d;
    }
  }
  return out;
}

void require_arity(const ExpPoly& p, const std::vector<Complex>& x) {
  if (x.size() != p.nvars()) throw ContextError("evaluation point has the wrong length");
}

}  // namespace

Complex eval_complex(const ExpPoly& p, const std::vector<Complex>& point, const BranchEnv* env) {
  require_arity(p, point);
  return eval_dual(p, point, env, false).v;
}

Complex eval_gradient(const ExpPoly& p, const std::vector<Complex>& point, std::vector<Complex>& grad,
                      const BranchEnv* env) {
  require_arity(p, point);
  Dual d = eval_dual(p, point, env, true);
  grad = std::move(d.d);
  return d.v;
}

RootCheck verify_root(const ExpPoly& p, const std::vector<Complex>& point, const BranchEnv* env, double tol) {
  double r = std::abs(eval_complex(p, point, env));
  return RootCheck{r <= tol, r};
}

std::vector<Complex> root_seeds(std::size_t grid) {
  std::vector<Complex> seeds = {{0, 0},  {1, 0},  {-1, 0}, {0.5, 0}, {-0.5, 0}, {0, 1},  {0, -1},
                                {2, 0},  {-2, 0}, {1, 1},  {1, -1},  {-1, 1},   {-1, -1}};
  if (grid >= 2) {
    for (std::size_t i = 0; i < grid; ++i)
      for (std::size_t j = 0; j < grid; ++j)
        seeds.emplace_back(-3.0 + 6.0 * static_cast<double>(i) / static_cast<double>(grid - 1),
                           -3.0 + 6.0 * static_cast<double>(j) / static_cast<double>(grid - 1));
  }
  return seeds;
}

namespace {

struct Attempt {
  Complex z;
  double residual = INFINITY;
  std::size_t iterations = 0;
};

// Damped Newton on coordinate `var` with the others fixed.
Attempt newton(const ExpPoly& p, std::vector<Complex> x, std::size_t var, Complex seed, const RootConfig& cfg,
               const BranchEnv* env) {
  Attempt best;
  std::vector<Complex> grad;
  x[var] = seed;
  Complex f;
  try {
    f = eval_gradient(p, x, grad, env);
  } catch (const NumericRangeError&) {
    return best;
  }
  best = Attempt{x[var], std::abs(f), 0};
  for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
    Complex df = grad[var];
    if (df == Complex(0.0) || !std::isfinite(std::abs(df))) break;
    Complex step = f / df;
    Complex z = x[var];
    bool moved = false;
    for (int halving = 0; halving <= 20 && !moved; ++halving, step *= 0.5) {
      x[var] = z - step;
      try {
        std::vector<Complex> g2;
        Complex f2 = eval_gradient(p, x, g2, env);
        if (std::abs(f2) < std::abs(f)) {
          f = f2;
          grad = std::move(g2);
          moved = true;
        }
      } catch (const NumericRangeError&) {
      }
    }
    if (!moved) {
      x[var] = z;
      break;
    }
    if (std::abs(f) < best.residual) best = Attempt{x[var], std::abs(f), it};
    if (std::abs(f) == 0.0 || std::abs(z - x[var]) <= 1e-16 * (1.0 + std::abs(z))) break;
  }
  return best;
}

bool depends_on(const ExpPoly& p, std::size_t var) {
  for (const auto& [key, c] : p.terms()) {
    if (key.powers[var] > 0) return true;
    if (key.exponent && depends_on(*key.exponent, var)) return true;
  }
  return false;
}

}  // namespace

RootResult find_root(const ExpPoly& p, const RootConfig& cfg, const BranchEnv* env) {
  if (p.is_constant()) throw DegenerateInputError("find_root needs a nonconstant p");
  RootResult out;
  if (auto pe = as_pure_exponential(p)) {
    out.tag = RootResult::Tag::NoZeros;
    out.certificate = pe->second;
    return out;
  }
  std::size_t n = p.nvars();
  std::vector<std::size_t> order;
  for (std::size_t v = 0; v < n; ++v)
    if (depends_on(p, v)) order.push_back(v);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto seeds = root_seeds(cfg.grid);

  double best = INFINITY;
  std::size_t tried = 0;
  std::size_t rounds = n > 1 ? cfg.restarts : 1;
  for (std::size_t round = 0; round < rounds; ++round) {
    std::vector<Complex> frozen(n, Complex(0.0));
    if (n > 1)
      for (auto& c : frozen) c = Complex(unit(rng), unit(rng));
    for (std::size_t var : order) {
      for (const auto& seed : seeds) {
        ++tried;
        Attempt a = newton(p, frozen, var, seed, cfg, env);
        if (a.residual < best) {
          best = a.residual;
          out.assignment = frozen;
          out.assignment[var] = a.z;
          out.iterations = a.iterations;
          out.variable = var;
        }
        if (a.residual <= cfg.tol) {
          out.tag = RootResult::Tag::Root;
          out.residual = a.residual;
          out.seeds_tried = tried;
          out.assignment = frozen;
          out.assignment[var] = a.z;
          out.iterations = a.iterations;
          out.variable = var;
          return out;
        }
      }
    }
  }
  out.tag = RootResult::Tag::NotFound;
  out.residual = best;
  out.seeds_tried = tried;
  return out;
}

}  // namespace expzero
