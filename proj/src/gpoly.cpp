#include <algorithm>
#include <numeric>

#include "expzero/errors.hpp"
#include "factor_internal.hpp"

namespace expzero::detail {

GPoly GPoly::constant(std::size_t n, const GaussQ& c) {
  GPoly p(n);
  p.add(Mono(n, 0), c);
  return p;
}

bool GPoly::is_constant() const {
  if (t.empty()) return true;
  if (t.size() != 1) return false;
  const Mono& m = t.begin()->first;
  return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

bool GPoly::is_rational() const {
  return std::all_of(t.begin(), t.end(), [](const auto& kv) { return kv.second.is_real(); });
}

void GPoly::add(const Mono& m, const GaussQ& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

int GPoly::degree(std::size_t v) const {
  int d = 0;
  for (const auto& [m, c] : t) d = std::max(d, m[v]);
  return d;
}

int GPoly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : t) d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
  return d;
}

std::vector<std::size_t> GPoly::used() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < nv; ++v)
    if (degree(v) > 0) out.push_back(v);
  return out;
}

GPoly operator+(const GPoly& a, const GPoly& b) {
  GPoly out = a;
  out.nv = std::max(a.nv, b.nv);
  for (const auto& [m, c] : b.t) out.add(m, c);
  return out;
}

GPoly operator-(const GPoly& a, const GPoly& b) { return a + scale(b, GaussQ(-1)); }

GPoly operator*(const GPoly& a, const GPoly& b) {
  GPoly out(std::max(a.nv, b.nv));
  for (const auto& [ma, ca] : a.t) {
    for (const auto& [mb, cb] : b.t) {
      Mono m = ma;
      for (std::size_t k = 0; k < m.size(); ++k) m[k] += mb[k];
      out.add(m, ca * cb);
    }
  }
  return out;
}

GPoly scale(const GPoly& a, const GaussQ& c) {
  GPoly out(a.nv);
  if (c.is_zero()) return out;
  for (const auto& [m, k] : a.t) out.t.emplace(m, k * c);
  return out;
}

GPoly pow(const GPoly& a, unsigned k) {
  GPoly out = GPoly::constant(a.nv, GaussQ(1));
  for (unsigned j = 0; j < k; ++j) out = out * a;
  return out;
}

GPoly monic(const GPoly& a) {
  if (a.is_zero()) return a;
  return scale(a, a.lead().inverse());
}

GPoly derivative(const GPoly& a, std::size_t v) {
  GPoly out(a.nv);
  for (const auto& [m, c] : a.t) {
    if (m[v] == 0) continue;
    Mono d = m;
    --d[v];
    out.add(d, c * GaussQ(m[v]));
  }
  return out;
}

GPoly conj(const GPoly& a) {
  GPoly out(a.nv);
  for (const auto& [m, c] : a.t) out.t.emplace(m, c.conj());
  return out;
}

GPoly shift(const GPoly& a, std::size_t v, const GaussQ& c) {
  GPoly out(a.nv);
  for (const auto& [m, k] : a.t) {
    int e = m[v];
    // (v + c)^e = sum binom(e, j) c^(e-j) v^j
    GaussQ cp = GaussQ(1);
    std::vector<GaussQ> cpow(static_cast<std::size_t>(e) + 1);
    for (int j = 0; j <= e; ++j) {
      cpow[static_cast<std::size_t>(j)] = cp;
      cp *= c;
    }
    mpz_class binom = 1;
    for (int j = 0; j <= e; ++j) {
      Mono mm = m;
      mm[v] = e - j;
      out.add(mm, k * GaussQ(Rational(binom)) * cpow[static_cast<std::size_t>(j)]);
      binom = binom * (e - j) / (j + 1);
    }
  }
  return out;
}

std::optional<GPoly> divide(const GPoly& f, const GPoly& g) {
  if (g.is_zero()) throw ContractError("division by the zero polynomial");
  GPoly q(f.nv), r = f;
  const auto& [lm, lc] = *g.t.rbegin();
  GaussQ inv = lc.inverse();
  while (!r.is_zero()) {
    const auto& [rm, rc] = *r.t.rbegin();
    Mono m(rm.size());
    for (std::size_t k = 0; k < m.size(); ++k) {
      m[k] = rm[k] - lm[k];
      if (m[k] < 0) return std::nullopt;
    }
    GaussQ c = rc * inv;
    q.add(m, c);
    for (const auto& [gm, gc] : g.t) {
      Mono mm = gm;
      for (std::size_t k = 0; k < mm.size(); ++k) mm[k] += m[k];
      r.add(mm, -(gc * c));
    }
  }
  return q;
}

namespace {

std::map<int, GPoly> coefficients(const GPoly& f, std::size_t v) {
  std::map<int, GPoly> out;
  for (const auto& [m, c] : f.t) {
    Mono mm = m;
    mm[v] = 0;
    auto it = out.try_emplace(m[v], GPoly(f.nv)).first;
    it->second.add(mm, c);
  }
  return out;
}

GPoly lead_in(const GPoly& f, std::size_t v) {
  GPoly out(f.nv);
  int d = f.degree(v);
  for (const auto& [m, c] : f.t) {
    if (m[v] != d) continue;
    Mono mm = m;
    mm[v] = 0;
    out.add(mm, c);
  }
  return out;
}

GPoly times_power(const GPoly& f, std::size_t v, int k) {
  GPoly out(f.nv);
  for (const auto& [m, c] : f.t) {
    Mono mm = m;
    mm[v] += k;
    out.t.emplace(std::move(mm), c);
  }
  return out;
}

GPoly exact(const GPoly& f, const GPoly& g) {
  auto q = divide(f, g);
  if (!q) throw ConstructionError("expected exact polynomial division");
  return *q;
}

GPoly pseudo_remainder(GPoly a, const GPoly& b, std::size_t v) {
  int db = b.degree(v);
  GPoly lb = lead_in(b, v);
  while (!a.is_zero() && a.degree(v) >= db) {
    int da = a.degree(v);
    GPoly la = lead_in(a, v);
    a = lb * a - times_power(la * b, v, da - db);
  }
  return a;
}

GPoly primitive(const GPoly& f, std::size_t v) { return monic(exact(f, content(f, v))); }

}  // namespace

GPoly content(const GPoly& f, std::size_t v) {
  GPoly g(f.nv);
  for (auto& [k, c] : coefficients(f, v)) {
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

GPoly gcd(const GPoly& f, const GPoly& g) {
  if (f.is_zero()) return monic(g);
  if (g.is_zero()) return monic(f);
  if (f.is_constant() || g.is_constant()) return GPoly::constant(f.nv, GaussQ(1));
  std::size_t v = f.nv;
  for (std::size_t k = 0; k < f.nv; ++k) {
    if (f.degree(k) > 0 || g.degree(k) > 0) {
      v = k;
      break;
    }
  }
  GPoly cf = content(f, v);
  GPoly cg = content(g, v);
  GPoly c = gcd(cf, cg);
  if (f.degree(v) == 0 || g.degree(v) == 0) return c;
  GPoly a = monic(exact(f, cf));
  GPoly b = monic(exact(g, cg));
  if (a.degree(v) < b.degree(v)) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.degree(v) == 0) {
      a = GPoly::constant(f.nv, GaussQ(1));
      break;
    }
    GPoly r = pseudo_remainder(a, b, v);
    a = b;
    b = r.is_zero() ? r : primitive(r, v);
  }
  return monic(c * a);
}

std::vector<std::pair<GPoly, unsigned>> squarefree(const GPoly& f) {
  std::vector<std::pair<GPoly, unsigned>> out;
  if (f.is_constant()) return out;
  std::size_t v = f.used().front();
  GPoly c = content(f, v);
  if (!c.is_constant()) out = squarefree(c);
  GPoly p = monic(exact(f, c));
  GPoly dp = derivative(p, v);
  GPoly a0 = gcd(p, dp);
  GPoly b = exact(p, a0);
  GPoly cc = exact(dp, a0);
  GPoly d = cc - derivative(b, v);
  for (unsigned i = 1; !b.is_constant(); ++i) {
    GPoly a = gcd(b, d);
    GPoly nb = exact(b, a);
    cc = exact(d, a);
    d = cc - derivative(nb, v);
    if (!a.is_constant()) out.emplace_back(monic(a), i);
    b = nb;
  }
  return out;
}

}  // namespace expzero::detail
