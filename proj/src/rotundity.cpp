#include "expzero/rotundity.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "expzero/errors.hpp"
#include "expzero/reduction.hpp"

namespace expzero {

IntMatrix IntMatrix::identity(std::size_t k) {
  IntMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) m(i, i) = 1;
  return m;
}

std::size_t IntMatrix::rank() const {
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = (*this)(i, j);
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t piv = r;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][col] == 0) continue;
      Rational f = a[i][col] / a[r][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

std::string IntMatrix::render() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols; ++j) out += (j ? ", " : "") + std::to_string((*this)(i, j));
    out += "]";
  }
  return out + "]";
}

namespace {

Complex ipow(Complex z, long k) {
  if (k < 0) return Complex(1.0) / ipow(z, -k);
  Complex r(1.0);
  for (long j = 0; j < k; ++j) r *= z;
  return r;
}

void check_nonzero(const std::vector<Complex>& y) {
  for (const auto& c : y)
    if (c == Complex(0.0)) throw DomainError("y coordinate is zero, outside the multiplicative group");
}

Complex random_unit_box(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double re = u(rng);
  double im = u(rng);
  return {re, im};
}

Complex random_annulus(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mod(0.5, 2.0);
  std::uniform_real_distribution<double> arg(0.0, 2.0 * std::numbers::pi);
  double r = mod(rng);
  double t = arg(rng);
  return std::polar(r, t);
}

// Coordinate solved for on the hypersurface: the highest y in p*, else the
// highest free x in p*.
std::optional<std::size_t> solve_coordinate(const VarietySystem& v, const SampleOptions& o) {
  auto used = v.hypersurface.used_variables();
  for (auto it = used.rbegin(); it != used.rend(); ++it)
    if (*it >= v.n || !o.pinned_x.count(*it)) return *it;
  return std::nullopt;
}

std::vector<Complex> univariate_roots(const std::vector<Complex>& coeffs) {
  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  std::size_t d = coeffs.size();
  while (d > 0 && std::abs(coeffs[d - 1]) <= 1e-14 * scale) --d;
  if (d < 2) return {};
  std::size_t deg = d - 1;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
  for (std::size_t i = 1; i < deg; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < deg; ++i)
    comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -coeffs[i] / coeffs[deg];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<Complex> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

struct Draw {
  std::vector<Complex> xy;
  std::size_t solved = 0;
};

std::optional<Draw> draw_once(const VarietySystem& v, std::mt19937_64& rng, const SampleOptions& o) {
  auto s = solve_coordinate(v, o);
  if (!s) return std::nullopt;
  Draw d;
  d.solved = *s;
  d.xy.resize(v.n + v.alpha);
  for (std::size_t i = 0; i < v.n; ++i) {
    auto pin = o.pinned_x.find(i);
    d.xy[i] = pin != o.pinned_x.end() ? pin->second : random_unit_box(rng);
  }
  for (std::size_t j = 0; j < v.alpha; ++j) d.xy[v.n + j] = random_annulus(rng);

  std::vector<Complex> coeffs(static_cast<std::size_t>(v.hypersurface.degree(d.solved)) + 1, Complex(0.0));
  for (const auto& [e, c] : v.hypersurface.terms()) {
    Complex t = c.to_complex();
    for (std::size_t k = 0; k < e.size(); ++k)
      if (k != d.solved && e[k] != 0) t *= ipow(d.xy[k], e[k]);
    coeffs[static_cast<std::size_t>(e[d.solved])] += t;
  }
  std::vector<Complex> roots;
  for (const auto& r : univariate_roots(coeffs))
    if (d.solved < v.n || std::abs(r) > 1e-12) roots.push_back(r);
  if (roots.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
  d.xy[d.solved] = roots[pick(rng)];

  std::vector<Complex> grad;
  for (int it = 0; it < 3; ++it) {
    Complex f = v.hypersurface.eval_gradient(d.xy, grad);
    if (grad[d.solved] == Complex(0.0)) break;
    d.xy[d.solved] -= f / grad[d.solved];
  }
  return d;
}

GPoint to_gpoint(const VarietySystem& v, const std::vector<Complex>& xy) {
  XYPoint p{std::vector<Complex>(xy.begin(), xy.begin() + static_cast<std::ptrdiff_t>(v.n)),
            std::vector<Complex>(xy.begin() + static_cast<std::ptrdiff_t>(v.n), xy.end())};
  return lift_phi(v, p);
}

std::optional<Draw> sample_draw(const VarietySystem& v, std::mt19937_64& rng, const SampleOptions& o) {
  if (v.hypersurface.is_constant()) throw ContractError("sampling needs a nonconstant p*");
  for (std::size_t attempt = 0; attempt < o.max_attempts; ++attempt) {
    auto d = draw_once(v, rng, o);
    if (!d) continue;
    bool finite = std::all_of(d->xy.begin(), d->xy.end(), [](Complex c) { return std::isfinite(std::abs(c)); });
    if (!finite) continue;
    auto m = membership(v, to_gpoint(v, d->xy), o.tol);
    if (m.member) return d;
  }
  return std::nullopt;
}

}  // namespace

CPoint apply_C(const IntMatrix& c, const std::vector<Complex>& z, const std::vector<Complex>& y) {
  if (z.size() != c.cols || y.size() != c.cols) throw ContextError("point does not match the matrix width");
  check_nonzero(y);
  CPoint out;
  for (std::size_t i = 0; i < c.rows; ++i) {
    Complex u(0.0);
    Complex v(1.0);
    for (std::size_t j = 0; j < c.cols; ++j) {
      if (c(i, j) == 0) continue;
      u += static_cast<double>(c(i, j)) * z[j];
      v *= ipow(y[j], c(i, j));
    }
    out.u.push_back(u);
    out.v.push_back(v);
  }
  return out;
}

std::vector<Complex> additive_coordinates(const GPoint& pt) {
  std::vector<Complex> z(pt.x);
  z.insert(z.end(), pt.w.begin(), pt.w.end());
  return z;
}

GPoint sample_variety_point(const VarietySystem& v, std::mt19937_64& rng, const SampleOptions& options) {
  auto d = sample_draw(v, rng, options);
  if (!d) throw SamplingError("no point of V found in " + std::to_string(options.max_attempts) + " draws");
  return to_gpoint(v, d->xy);
}

RankEstimate image_rank_probe(const VarietySystem& v, const IntMatrix& c, std::mt19937_64& rng,
                              const ProbeConfig& config) {
  if (c.cols != v.alpha) throw ContractError("matrix width must equal alpha");
  if (c.rows == 0 || c.rank() != c.rows) throw ContractError("matrix must have full row rank");
  auto solved = solve_coordinate(v, config.sampling);
  if (!solved) throw ContractError("p* has no free coordinate to solve for");
  std::size_t dim = v.n + v.alpha;
  std::vector<std::size_t> params;
  for (std::size_t k = 0; k < dim; ++k) {
    if (k == *solved) continue;
    if (k < v.n && config.sampling.pinned_x.count(k)) continue;
    params.push_back(k);
  }
  const auto P = static_cast<Eigen::Index>(params.size());
  const auto r = static_cast<Eigen::Index>(c.rows);
  const auto A = static_cast<Eigen::Index>(v.alpha);

  RankEstimate est;
  est.parameters = params.size();
  for (std::size_t s = 0; s < config.samples; ++s) {
    auto d = sample_draw(v, rng, config.sampling);
    if (!d) {
      ++est.degenerate;
      continue;
    }
    std::vector<Complex> grad;
    v.hypersurface.eval_gradient(d->xy, grad);
    Complex ds = grad[*solved];
    if (std::abs(ds) < 1e-12) {
      ++est.degenerate;
      continue;
    }
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), P);
    for (Eigen::Index k = 0; k < P; ++k) {
      auto ck = params[static_cast<std::size_t>(k)];
      D(static_cast<Eigen::Index>(ck), k) = 1.0;
      D(static_cast<Eigen::Index>(*solved), k) = -grad[ck] / ds;
    }
    Eigen::MatrixXcd dZ(A, P);
    for (std::size_t i = 0; i < v.n; ++i) dZ.row(static_cast<Eigen::Index>(i)) = D.row(static_cast<Eigen::Index>(i));
    for (std::size_t i = v.n; i < v.alpha; ++i) {
      std::vector<Complex> g;
      v.graph[i - v.n].eval_gradient(d->xy, g);
      Eigen::RowVectorXcd gr(static_cast<Eigen::Index>(dim));
      for (std::size_t k = 0; k < dim; ++k) gr(static_cast<Eigen::Index>(k)) = g[k];
      dZ.row(static_cast<Eigen::Index>(i)) = gr * D;
    }
    Eigen::MatrixXcd dLogY(A, P);
    for (std::size_t j = 0; j < v.alpha; ++j)
      dLogY.row(static_cast<Eigen::Index>(j)) = D.row(static_cast<Eigen::Index>(v.n + j)) / d->xy[v.n + j];
    Eigen::MatrixXcd C(r, A);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < A; ++j)
        C(i, j) = static_cast<double>(c(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    Eigen::MatrixXcd J(2 * r, P);
    if (P > 0) {
      J.topRows(r) = C * dZ;
      J.bottomRows(r) = C * dLogY;
    }
    std::size_t rank = 0;
    if (P > 0) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(J);
      const auto& sv = svd.singularValues();
      double top = sv.size() ? sv(0) : 0.0;
      for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (top > 0.0 && sv(k) > config.rank_tol * top) ++rank;
    }
    est.rank = std::max(est.rank, rank);
    ++est.samples_used;
  }
  if (est.samples_used == 0) throw ProbeInconclusiveError("every sampled point was degenerate");
  return est;
}

IntMatrix random_full_rank(std::size_t cols, long max_entry, std::mt19937_64& rng) {
  if (cols == 0 || max_entry < 1) throw ContractError("random matrix needs cols >= 1 and max_entry >= 1");
  std::uniform_int_distribution<std::size_t> rows(1, cols);
  std::uniform_int_distribution<long> entry(-max_entry, max_entry);
  IntMatrix m(rows(rng), cols);
  do {
    for (auto& e : m.data) e = entry(rng);
  } while (m.rank() != m.rows);
  return m;
}

RotundityReport rotundity_probe(const VarietySystem& v, const RotundityConfig& config) {
  FreenessResult fr = freeness_check(v);
  if (!fr.is_free()) {
    std::string witness = tag_name(fr.tag);
    if (fr.g) witness += ": exp(" + fr.g->render() + ") = " + fr.render_b();
    throw ContractError("rotundity probe needs a free system; " + witness);
  }
  RotundityReport rep;
  rep.seed = config.seed;
  rep.alpha = v.alpha;
  rep.n = v.n;
  rep.max_entry = config.max_entry;
  rep.expected_dimension = v.alpha + v.n - 1;

  std::seed_seq base{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                     0xffffffffu};
  std::mt19937_64 id_rng(base);
  rep.identity_rank = image_rank_probe(v, IntMatrix::identity(v.alpha), id_rng, config.probe).rank;

  rep.pass = true;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    MatrixRecord rec;
    rec.trial = trial;
    rec.c = random_full_rank(v.alpha, config.max_entry, rng);
    rec.r = rec.c.rows;
    try {
      auto est = image_rank_probe(v, rec.c, rng, config.probe);
      rec.samples = est.samples_used;
      rec.rank = est.rank;
      rec.pass = est.rank >= rec.r;
    } catch (const ProbeInconclusiveError& e) {
      rec.inconclusive = true;
      rec.warning = e.what();
      ++rep.inconclusive;
    }
    if (!rec.pass && !rec.inconclusive) rep.pass = false;
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

}  // namespace expzero
