#include "expzero/factor.hpp"

#include <algorithm>

#include "expzero/errors.hpp"
#include "factor_internal.hpp"

namespace expzero {

using detail::GPoly;
using detail::Mono;
using detail::ZPoly;

namespace {

// Variables of the polynomial first, then one per log constant.
struct Encoding {
  VarList names;
  std::size_t nvars = 0;
  std::vector<LogConstant> logs;

  std::size_t width() const { return nvars + logs.size(); }

  GPoly encode(const Poly& f) const {
    GPoly g(width());
    for (const auto& [e, c] : f.terms()) {
      for (const auto& [logmono, q] : c.terms()) {
        Mono m(width(), 0);
        for (std::size_t k = 0; k < nvars; ++k) m[k] = e[k];
        for (const auto& [lc, k] : logmono) {
          auto pos = std::lower_bound(logs.begin(), logs.end(), lc) - logs.begin();
          m[nvars + static_cast<std::size_t>(pos)] = static_cast<int>(k);
        }
        g.add(m, q);
      }
    }
    return g;
  }

  Scalar scalar_of(const Mono& m, const GaussQ& c) const {
    Scalar s(c);
    for (std::size_t k = 0; k < logs.size(); ++k)
      for (int j = 0; j < m[nvars + k]; ++j) s *= Scalar::log(logs[k]);
    return s;
  }

  Poly decode(const GPoly& g) const {
    Poly out(names);
    for (const auto& [m, c] : g.t) {
      Exponents e(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(nvars));
      out.add_term(e, scalar_of(m, c));
    }
    return out;
  }

  /// Value of a polynomial that involves log variables only.
  Scalar decode_unit(const GPoly& g) const {
    Scalar s;
    for (const auto& [m, c] : g.t) s += scalar_of(m, c);
    return s;
  }

  bool only_logs(const GPoly& g) const {
    for (std::size_t v : g.used())
      if (v < nvars) return false;
    return true;
  }
};

Encoding encoding_for(const Poly& f) {
  Encoding enc;
  enc.names = f.names();
  enc.nvars = f.nvars();
  for (const auto& [e, c] : f.terms())
    for (const auto& lc : c.log_constants()) enc.logs.push_back(lc);
  std::sort(enc.logs.begin(), enc.logs.end());
  enc.logs.erase(std::unique(enc.logs.begin(), enc.logs.end()), enc.logs.end());
  return enc;
}

GPoly exact(const GPoly& f, const GPoly& g) {
  auto q = detail::divide(f, g);
  if (!q) throw ConstructionError("expected exact polynomial division");
  return *q;
}

struct Factorer {
  const FactorBudget& budget;
  std::size_t subsets = 0;

  bool linear_somewhere(const GPoly& f) const {
    for (std::size_t v : f.used())
      if (f.degree(v) == 1) return true;
    return false;
  }

  void check_budget(const GPoly& f) const {
    if (f.total_degree() > budget.max_total_degree)
      throw BudgetError("total degree " + std::to_string(f.total_degree()) + " exceeds the factoring budget of " +
                            std::to_string(budget.max_total_degree),
                        "");
    if (f.used().size() > budget.max_vars)
      throw BudgetError(std::to_string(f.used().size()) + " variables exceed the factoring budget of " +
                            std::to_string(budget.max_vars),
                        "");
  }

  // Monic square-free f, possibly reducible.
  std::vector<GPoly> split(const GPoly& f) {
    if (f.is_constant()) return {};
    for (std::size_t v : f.used()) {
      GPoly c = detail::content(f, v);
      if (!c.is_constant()) {
        auto a = split(c);
        auto b = split(detail::monic(exact(f, c)));
        a.insert(a.end(), b.begin(), b.end());
        return a;
      }
    }
    // Primitive in every variable: degree one in some variable means irreducible.
    if (linear_somewhere(f)) return {f};
    check_budget(f);
    std::vector<GPoly> rational = f.is_rational() ? over_q(f) : std::vector<GPoly>{f};
    std::vector<GPoly> out;
    for (const auto& q : rational) {
      if (linear_somewhere(q)) {
        out.push_back(q);
      } else {
        auto pieces = trager(q);
        out.insert(out.end(), pieces.begin(), pieces.end());
      }
    }
    return out;
  }

  // Irreducible factors over Q of a monic square-free rational f that is
  // primitive in every variable, by Kronecker substitution.
  std::vector<GPoly> over_q(const GPoly& f) {
    std::vector<std::size_t> vars = f.used();
    std::vector<long> radix;
    long span = 1;
    for (std::size_t v : vars) {
      radix.push_back(span);
      long width = f.degree(v) + 1;
      if (span > static_cast<long>(budget.max_kronecker_degree) / width + 1)
        throw BudgetError("Kronecker substitution exceeds the degree budget", "");
      span *= width;
    }
    if (span > static_cast<long>(budget.max_kronecker_degree) + 1)
      throw BudgetError("Kronecker substitution exceeds the degree budget", "");

    mpz_class den = 1;
    for (const auto& [m, c] : f.t) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.re().get_den_mpz_t());
    ZPoly big(static_cast<std::size_t>(span), 0);
    for (const auto& [m, c] : f.t) {
      long e = 0;
      for (std::size_t k = 0; k < vars.size(); ++k) e += m[vars[k]] * radix[k];
      Rational v = c.re() * den;
      big[static_cast<std::size_t>(e)] = v.get_num();
    }
    while (!big.empty() && sgn(big.back()) == 0) big.pop_back();
    mpz_class g = 0;
    for (const auto& c : big) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (sgn(big.back()) < 0) g = -g;
    for (auto& c : big) c /= g;

    detail::ZFactorBudget zb{budget.max_subsets};
    std::vector<ZPoly> items = detail::factor_z(big, subsets, zb);
    if (items.size() <= 1) return {f};

    auto unkron = [&](const ZPoly& h) -> std::optional<GPoly> {
      GPoly out(f.nv);
      for (std::size_t e = 0; e < h.size(); ++e) {
        if (sgn(h[e]) == 0) continue;
        Mono m(f.nv, 0);
        long rest = static_cast<long>(e);
        for (std::size_t k = 0; k < vars.size(); ++k) {
          long width = f.degree(vars[k]) + 1;
          m[vars[k]] = static_cast<int>(rest % width);
          rest /= width;
        }
        if (rest != 0) return std::nullopt;
        out.add(m, GaussQ(Rational(h[e])));
      }
      return detail::monic(out);
    };

    std::vector<GPoly> found;
    GPoly rest = f;
    for (std::size_t s = 1; 2 * s <= items.size();) {
      bool hit = false;
      std::vector<std::size_t> idx(s);
      for (std::size_t k = 0; k < s; ++k) idx[k] = k;
      for (;;) {
        if (++subsets > budget.max_subsets)
          throw BudgetError("factor recombination exceeded the subset budget", "");
        ZPoly prod{1};
        for (std::size_t k : idx) {
          ZPoly next(prod.size() + items[k].size() - 1, 0);
          for (std::size_t a = 0; a < prod.size(); ++a)
            for (std::size_t b = 0; b < items[k].size(); ++b) next[a + b] += prod[a] * items[k][b];
          prod = std::move(next);
        }
        auto cand = unkron(prod);
        if (cand && !cand->is_constant()) {
          if (auto q = detail::divide(rest, *cand)) {
            found.push_back(*cand);
            rest = *q;
            for (std::size_t k = s; k-- > 0;) items.erase(items.begin() + static_cast<std::ptrdiff_t>(idx[k]));
            hit = true;
            break;
          }
        }
        std::size_t k = s;
        while (k > 0 && idx[k - 1] == items.size() - s + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
      }
      if (!hit) ++s;
    }
    if (!rest.is_constant()) found.push_back(detail::monic(rest));
    return found;
  }

  // Split a square-free factor over Q(i) through the norm to Q.
  std::vector<GPoly> trager(const GPoly& f) {
    std::size_t v = f.used().front();
    GaussQ unit_i = GaussQ::imaginary_unit();
    for (long s = f.is_rational() ? 1 : 0; s <= 12; ++s) {
      GaussQ c = GaussQ(Rational(-s)) * unit_i;
      GPoly fs = detail::shift(f, v, c);
      GPoly norm = fs * detail::conj(fs);
      auto parts = detail::squarefree(detail::monic(norm));
      if (parts.size() != 1 || parts.front().second != 1) continue;
      auto rational = split_rational(detail::monic(norm));
      if (rational.size() <= 1) return {f};
      std::vector<GPoly> out;
      for (const auto& g : rational) {
        GPoly h = detail::gcd(fs, g);
        if (h.is_constant()) continue;
        out.push_back(detail::monic(detail::shift(h, v, GaussQ(Rational(0)) - c)));
      }
      return out;
    }
    throw BudgetError("no shift found that makes the norm square-free", "");
  }

  // Irreducible factors over Q of a rational square-free polynomial.
  std::vector<GPoly> split_rational(const GPoly& f) {
    if (f.is_constant()) return {};
    for (std::size_t v : f.used()) {
      GPoly c = detail::content(f, v);
      if (!c.is_constant()) {
        auto a = split_rational(c);
        auto b = split_rational(detail::monic(exact(f, c)));
        a.insert(a.end(), b.begin(), b.end());
        return a;
      }
    }
    if (linear_somewhere(f)) return {f};
    return over_q(f);
  }
};

std::string render_parts(const Encoding& enc, const std::vector<std::pair<GPoly, unsigned>>& parts) {
  std::string s;
  for (const auto& [g, m] : parts) {
    if (!s.empty()) s += " * ";
    s += "(" + enc.decode(g).render() + ")";
    if (m != 1) s += "^" + std::to_string(m);
  }
  return s;
}

bool factor_less(const Factor& a, const Factor& b) {
  int da = a.poly.total_degree(), db = b.poly.total_degree();
  if (da != db) return da < db;
  return a.poly.render() < b.poly.render();
}

struct Prepared {
  Encoding enc;
  Factorization out;
  std::vector<std::pair<GPoly, unsigned>> parts;
};

Prepared prepare(const Poly& f) {
  if (f.is_zero()) throw ContractError("cannot factor the zero polynomial");
  if (!f.is_polynomial()) throw ContractError("cannot factor a Laurent polynomial");
  Prepared pr;
  pr.enc = encoding_for(f);
  GPoly g = pr.enc.encode(f);
  Mono low(g.nv, 0);
  for (std::size_t v = 0; v < g.nv; ++v) {
    int d = g.t.begin()->first[v];
    for (const auto& [m, c] : g.t) d = std::min(d, m[v]);
    low[v] = d;
  }
  GPoly stripped(g.nv);
  for (const auto& [m, c] : g.t) {
    Mono mm = m;
    for (std::size_t v = 0; v < mm.size(); ++v) mm[v] -= low[v];
    stripped.add(mm, c);
  }
  for (std::size_t v = 0; v < g.nv; ++v) {
    if (low[v] == 0) continue;
    if (v < pr.enc.nvars) {
      pr.out.factors.push_back(Factor{Poly::variable(f.names(), v), static_cast<unsigned>(low[v])});
    } else {
      for (int k = 0; k < low[v]; ++k) pr.out.unit *= Scalar::log(pr.enc.logs[v - pr.enc.nvars]);
    }
  }
  pr.out.unit *= Scalar(stripped.lead());
  GPoly m = detail::monic(stripped);
  if (!m.is_constant()) pr.parts = detail::squarefree(m);
  return pr;
}

// Rational factors are scaled to primitive integer form with a positive
// leading coefficient; the unit absorbs the scale.
void tidy(Prepared& pr) {
  for (auto& fac : pr.out.factors) {
    mpz_class den = 1, num = 0;
    bool rational = true;
    for (const auto& [e, c] : fac.poly.terms()) {
      auto g = c.as_gauss();
      if (!g || !g->is_real()) {
        rational = false;
        break;
      }
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), g->re().get_den_mpz_t());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), g->re().get_num_mpz_t());
    }
    if (!rational) continue;
    Rational k = Rational(den) / Rational(num);
    if (sgn(fac.poly.terms().rbegin()->second.as_gauss()->re()) < 0) k = -k;
    if (k == 1) continue;
    fac.poly = Scalar(k) * fac.poly;
    Rational inv = 1 / k;
    for (unsigned m = 0; m < fac.multiplicity; ++m) pr.out.unit *= Scalar(inv);
  }
}

void finish(const Poly& f, Prepared& pr) {
  tidy(pr);
  std::sort(pr.out.factors.begin(), pr.out.factors.end(), factor_less);
  if (pr.out.expand(f.names()) != f) throw ConstructionError("factorization does not multiply back to the input");
}

void add_factor(Prepared& pr, const GPoly& g, unsigned mult) {
  if (pr.enc.only_logs(g)) {
    Scalar u = pr.enc.decode_unit(g);
    for (unsigned k = 0; k < mult; ++k) pr.out.unit *= u;
    return;
  }
  Poly p = pr.enc.decode(g);
  for (auto& fac : pr.out.factors) {
    if (fac.poly == p) {
      fac.multiplicity += mult;
      return;
    }
  }
  pr.out.factors.push_back(Factor{p, mult});
}

}  // namespace

Poly Factorization::expand(const VarList& names) const {
  Poly out = Poly::constant(names, unit);
  for (const auto& f : factors) out = out * f.poly.pow(f.multiplicity);
  return out;
}

std::string Factorization::render() const {
  std::string s = unit.is_one() ? "" : unit.render_factor();
  for (const auto& f : factors) {
    if (!s.empty()) s += " * ";
    s += "(" + f.poly.render() + ")";
    if (f.multiplicity != 1) s += "^" + std::to_string(f.multiplicity);
  }
  return s.empty() ? "1" : s;
}

Factorization squarefree(const Poly& f) {
  Prepared pr = prepare(f);
  for (const auto& [g, m] : pr.parts) add_factor(pr, g, m);
  finish(f, pr);
  return pr.out;
}

Factorization factor(const Poly& f, const FactorBudget& budget) {
  Prepared pr = prepare(f);
  Factorer fz{budget};
  for (const auto& [g, m] : pr.parts) {
    std::vector<GPoly> pieces;
    try {
      pieces = fz.split(g);
    } catch (const BudgetError& e) {
      throw BudgetError(e.what(), render_parts(pr.enc, pr.parts));
    }
    for (const auto& q : pieces) add_factor(pr, q, m);
  }
  finish(f, pr);
  return pr.out;
}

}  // namespace expzero
