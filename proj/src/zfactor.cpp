#include <algorithm>
#include <cstdint>
#include <random>

#include "expzero/errors.hpp"
#include "factor_internal.hpp"

namespace expzero::detail {

namespace {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;  // lowest coefficient first, trimmed

struct Field {
  u64 p;

  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return a * b % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    for (a %= p; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
};

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

ModPoly reduce(const ZPoly& f, const Field& F) {
  ModPoly out(f.size());
  mpz_class pz = static_cast<unsigned long>(F.p);
  for (std::size_t k = 0; k < f.size(); ++k) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), f[k].get_mpz_t(), pz.get_mpz_t());
    out[k] = r.get_ui();
  }
  trim(out);
  return out;
}

ModPoly msub(ModPoly a, const ModPoly& b, const Field& F) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t k = 0; k < b.size(); ++k) a[k] = F.sub(a[k], b[k]);
  trim(a);
  return a;
}

ModPoly mmul(const ModPoly& a, const ModPoly& b, const Field& F) {
  if (a.empty() || b.empty()) return {};
  ModPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % F.p;
  }
  trim(out);
  return out;
}

// a = q*b + r
void mdivrem(ModPoly a, const ModPoly& b, ModPoly* q, ModPoly* r, const Field& F) {
  u64 inv = F.inv(b.back());
  ModPoly quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    u64 c = F.mul(a.back(), inv);
    quot[shift] = c;
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] = F.sub(a[k + shift], F.mul(c, b[k]));
    trim(a);
  }
  trim(quot);
  if (q) *q = std::move(quot);
  if (r) *r = std::move(a);
}

ModPoly mmod(const ModPoly& a, const ModPoly& b, const Field& F) {
  ModPoly r;
  mdivrem(a, b, nullptr, &r, F);
  return r;
}

ModPoly mmonic(ModPoly a, const Field& F) {
  if (a.empty()) return a;
  u64 inv = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, inv);
  return a;
}

ModPoly mgcd(ModPoly a, ModPoly b, const Field& F) {
  while (!b.empty()) {
    ModPoly r = mmod(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return mmonic(a, F);
}

ModPoly mderiv(const ModPoly& a, const Field& F) {
  ModPoly out;
  for (std::size_t k = 1; k < a.size(); ++k) out.push_back(F.mul(a[k], k % F.p));
  trim(out);
  return out;
}

ModPoly mpowmod(ModPoly base, const mpz_class& e, const ModPoly& m, const Field& F) {
  ModPoly r{1};
  base = mmod(base, m, F);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t k = bits; k-- > 0;) {
    r = mmod(mmul(r, r, F), m, F);
    if (mpz_tstbit(e.get_mpz_t(), k)) r = mmod(mmul(r, base, F), m, F);
  }
  return r;
}

std::vector<ModPoly> equal_degree(const ModPoly& f, int d, const Field& F, std::mt19937_64& rng) {
  if (deg(f) == d) return {f};
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), F.p, static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<u64> coef(0, F.p - 1);
  for (;;) {
    ModPoly a(static_cast<std::size_t>(deg(f)));
    for (auto& c : a) c = coef(rng);
    trim(a);
    if (deg(a) < 1) continue;
    ModPoly b = msub(mpowmod(a, e, f, F), ModPoly{1}, F);
    ModPoly g = mgcd(b, f, F);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      ModPoly h;
      mdivrem(f, g, &h, nullptr, F);
      auto left = equal_degree(g, d, F, rng);
      auto right = equal_degree(mmonic(h, F), d, F, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

// Monic irreducible factors of a monic square-free polynomial.
std::vector<ModPoly> factor_mod(const ModPoly& f, const Field& F) {
  std::mt19937_64 rng(0x5eed);
  std::vector<ModPoly> out;
  ModPoly rest = f;
  ModPoly x{0, 1};
  ModPoly h = x;
  mpz_class p = static_cast<unsigned long>(F.p);
  for (int i = 1; 2 * i <= deg(rest); ++i) {
    h = mpowmod(h, p, rest, F);
    ModPoly g = mgcd(msub(h, x, F), rest, F);
    if (deg(g) > 0) {
      for (auto& piece : equal_degree(g, i, F, rng)) out.push_back(std::move(piece));
      ModPoly q;
      mdivrem(rest, g, &q, nullptr, F);
      rest = mmonic(q, F);
      h = mmod(h, rest, F);
    }
  }
  if (deg(rest) > 0) out.push_back(rest);
  return out;
}

// ---------------------------------------------------------------------------
// Integer polynomials modulo M.

void ztrim(ZPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly zmod(ZPoly a, const mpz_class& m) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  ztrim(a);
  return a;
}

ZPoly zadd(ZPoly a, const ZPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t k = 0; k < b.size(); ++k) a[k] += b[k];
  ztrim(a);
  return a;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
  ztrim(a);
  return a;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  ztrim(out);
  return out;
}

// Division by a monic polynomial modulo m.
void zdivrem_monic(ZPoly a, const ZPoly& b, const mpz_class& m, ZPoly* q, ZPoly* r) {
  a = zmod(std::move(a), m);
  ZPoly quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    mpz_class c = a.back();
    quot[shift] = c;
    for (std::size_t k = 0; k < b.size(); ++k) {
      a[k + shift] -= c * b[k];
      mpz_fdiv_r(a[k + shift].get_mpz_t(), a[k + shift].get_mpz_t(), m.get_mpz_t());
    }
    ztrim(a);
  }
  ztrim(quot);
  if (q) *q = zmod(std::move(quot), m);
  if (r) *r = std::move(a);
}

ZPoly lift_mod(const ModPoly& a) {
  ZPoly out;
  for (u64 c : a) out.emplace_back(static_cast<unsigned long>(c));
  ztrim(out);
  return out;
}

// One quadratic Hensel step from m to m^2.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const mpz_class& m2) {
  ZPoly e = zmod(zsub(f, zmul(g, h)), m2);
  ZPoly q, r;
  zdivrem_monic(zmul(s, e), h, m2, &q, &r);
  ZPoly gs = zmod(zadd(zadd(g, zmul(t, e)), zmul(q, g)), m2);
  ZPoly hs = zmod(zadd(h, r), m2);
  ZPoly b = zmod(zsub(zadd(zmul(s, gs), zmul(t, hs)), ZPoly{1}), m2);
  ZPoly c, d;
  zdivrem_monic(zmul(s, b), hs, m2, &c, &d);
  s = zmod(zsub(s, d), m2);
  t = zmod(zsub(zsub(t, zmul(t, b)), zmul(c, gs)), m2);
  g = std::move(gs);
  h = std::move(hs);
}

// s*a + t*b = 1 over F_p.
void ext_gcd(const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t, const Field& F) {
  ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    ModPoly q, r;
    mdivrem(r0, r1, &q, &r, F);
    ModPoly s2 = msub(s0, mmul(q, s1, F), F);
    ModPoly t2 = msub(t0, mmul(q, t1, F), F);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  u64 inv = F.inv(r0.front());
  for (auto& c : s0) c = F.mul(c, inv);
  for (auto& c : t0) c = F.mul(c, inv);
  s = s0;
  t = t0;
}

mpz_class content(const ZPoly& a) {
  mpz_class g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly primitive(ZPoly a) {
  mpz_class g = content(a);
  if (sgn(a.back()) < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

ZPoly symmetric(ZPoly a, const mpz_class& m) {
  mpz_class half = m / 2;
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  ztrim(a);
  return a;
}

std::optional<ZPoly> zdivide_exact(ZPoly a, const ZPoly& b) {
  ZPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    if (!mpz_divisible_p(a.back().get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    mpz_class c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= c * b[k];
    ztrim(a);
  }
  if (!a.empty()) return std::nullopt;
  ztrim(q);
  return q;
}

const std::vector<u64>& primes() {
  static const std::vector<u64> list = [] {
    std::vector<u64> out;
    for (u64 n = 101; n < 60000; n += 2) {
      bool prime = true;
      for (u64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) {
          prime = false;
          break;
        }
      if (prime) out.push_back(n);
    }
    return out;
  }();
  return list;
}

// Zassenhaus for a square-free primitive F. Returns nullopt when no prime
// keeps F square-free, which means F is not square-free after all.
std::optional<std::vector<ZPoly>> zassenhaus(const ZPoly& f, std::size_t& subsets,
                                             const ZFactorBudget& budget) {
  if (zdeg(f) <= 1) return std::vector<ZPoly>{f};
  Field best{0};
  std::vector<ModPoly> best_factors;
  int good = 0;
  for (u64 p : primes()) {
    Field F{p};
    ModPoly fm = reduce(f, F);
    if (deg(fm) != zdeg(f)) continue;
    ModPoly fmon = mmonic(fm, F);
    if (deg(mgcd(fmon, mderiv(fmon, F), F)) != 0) continue;
    auto facs = factor_mod(fmon, F);
    if (best.p == 0 || facs.size() < best_factors.size()) {
      best = F;
      best_factors = std::move(facs);
    }
    if (++good == 4 || best_factors.size() == 1) break;
  }
  if (best.p == 0) return std::nullopt;
  if (best_factors.size() == 1) return std::vector<ZPoly>{f};

  // Coefficient bound for lc(f) times any factor.
  mpz_class maxc = 0;
  for (const auto& c : f) maxc = std::max(maxc, mpz_class(abs(c)));
  mpz_class root = static_cast<unsigned long>(f.size());
  mpz_sqrt(root.get_mpz_t(), root.get_mpz_t());
  ++root;
  mpz_class bound = abs(f.back()) * maxc * root;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(zdeg(f)));
  bound *= 2;

  mpz_class pz = static_cast<unsigned long>(best.p);
  mpz_class M = pz;
  unsigned steps = 0;
  while (M <= bound) {
    M *= M;
    ++steps;
  }

  // Lift the factors one at a time against the product of the rest.
  std::vector<ZPoly> lifted;
  ZPoly current = f;
  const Field& F = best;
  for (std::size_t i = 0; i + 1 < best_factors.size(); ++i) {
    ModPoly rest{1};
    for (std::size_t j = i + 1; j < best_factors.size(); ++j) rest = mmul(rest, best_factors[j], F);
    ModPoly cur_mod = reduce(current, F);
    ModPoly gmod = best_factors[i];
    u64 lc = cur_mod.back();
    for (auto& c : gmod) c = F.mul(c, lc);
    ModPoly sm, tm;
    ext_gcd(gmod, rest, sm, tm, F);
    ZPoly g = lift_mod(gmod), h = lift_mod(rest), s = lift_mod(sm), t = lift_mod(tm);
    mpz_class m = pz;
    for (unsigned k = 0; k < steps; ++k) {
      m *= m;
      hensel_step(zmod(current, m), g, h, s, t, m);
    }
    mpz_class inv;
    mpz_class glc = g.back();
    mpz_invert(inv.get_mpz_t(), glc.get_mpz_t(), M.get_mpz_t());
    for (auto& c : g) c = c * inv;
    lifted.push_back(zmod(g, M));
    current = h;
  }
  lifted.push_back(zmod(current, M));

  // Recombination by subsets of increasing size.
  std::vector<ZPoly> out;
  ZPoly rest = f;
  std::vector<std::size_t> live(lifted.size());
  for (std::size_t k = 0; k < live.size(); ++k) live[k] = k;
  for (std::size_t s = 1; 2 * s <= live.size();) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t k = 0; k < s; ++k) idx[k] = k;
    for (;;) {
      if (++subsets > budget.max_subsets)
        throw BudgetError("factor recombination exceeded the subset budget", "");
      ZPoly cand{rest.back()};
      for (std::size_t k : idx) cand = zmod(zmul(cand, lifted[live[k]]), M);
      cand = primitive(symmetric(cand, M));
      if (auto q = zdivide_exact(rest, cand)) {
        out.push_back(cand);
        rest = *q;
        for (std::size_t k = s; k-- > 0;) live.erase(live.begin() + static_cast<std::ptrdiff_t>(idx[k]));
        found = true;
        break;
      }
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == live.size() - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (zdeg(rest) > 0) out.push_back(primitive(rest));
  return out;
}

}  // namespace

std::vector<ZPoly> factor_z(const ZPoly& input, std::size_t& subsets, const ZFactorBudget& budget) {
  std::vector<ZPoly> out;
  ZPoly f = input;
  ztrim(f);
  std::size_t low = 0;
  while (low < f.size() && sgn(f[low]) == 0) ++low;
  for (std::size_t k = 0; k < low; ++k) out.push_back(ZPoly{0, 1});
  f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(low));
  if (zdeg(f) <= 0) return out;
  f = primitive(f);
  if (auto direct = zassenhaus(f, subsets, budget)) {
    out.insert(out.end(), direct->begin(), direct->end());
    return out;
  }
  // Not square-free: split over Q first.
  GPoly g(1);
  for (std::size_t k = 0; k < f.size(); ++k) g.add(Mono{static_cast<int>(k)}, GaussQ(Rational(f[k])));
  for (auto& [part, mult] : squarefree(monic(g))) {
    mpz_class den = 1;
    for (const auto& [m, c] : part.t) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.re().get_den_mpz_t());
    ZPoly z(static_cast<std::size_t>(part.degree(0)) + 1, 0);
    for (const auto& [m, c] : part.t) {
      Rational v = c.re() * den;
      z[static_cast<std::size_t>(m[0])] = v.get_num();
    }
    auto pieces = zassenhaus(primitive(z), subsets, budget);
    if (!pieces) throw ConstructionError("square-free part has no good prime");
    for (unsigned k = 0; k < mult; ++k) out.insert(out.end(), pieces->begin(), pieces->end());
  }
  return out;
}

}  // namespace expzero::detail
