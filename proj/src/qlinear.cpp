#include "expzero/qlinear.hpp"

#include <algorithm>

namespace expzero::qlin {

bool CoordinateLess::operator()(const Coordinate& a, const Coordinate& b) const {
  if (int c = compare(a.key, b.key)) return c < 0;
  if (int c = compare(a.logs, b.logs)) return c < 0;
  return a.imaginary < b.imaginary;
}

QVector flatten(const ExpPoly& g) {
  QVector v;
  for (const auto& [key, coeff] : g.terms()) {
    if (key.is_constant()) continue;
    for (const auto& [logs, c] : coeff.terms()) {
      if (sgn(c.re()) != 0) v.emplace(Coordinate{key, logs, false}, c.re());
      if (sgn(c.im()) != 0) v.emplace(Coordinate{key, logs, true}, c.im());
    }
  }
  return v;
}

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Rows are coordinates, columns the given vectors (plus optional extra).
Matrix to_columns(const std::vector<QVector>& cols, const QVector* extra) {
  std::map<Coordinate, std::size_t, CoordinateLess> index;
  auto visit = [&index](const QVector& v) {
    for (const auto& [c, _] : v) index.emplace(c, 0);
  };
  for (const auto& v : cols) visit(v);
  if (extra) visit(*extra);
  std::size_t r = 0;
  for (auto& [c, i] : index) i = r++;
  std::size_t ncols = cols.size() + (extra ? 1 : 0);
  Matrix m(index.size(), std::vector<Rational>(ncols, Rational(0)));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [c, val] : cols[j]) m[index[c]][j] = val;
  if (extra)
    for (const auto& [c, val] : *extra) m[index[c]][cols.size()] = val;
  return m;
}

// Reduced row echelon form over the first `ncols` columns; returns pivots.
std::vector<std::size_t> rref(Matrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && sgn(m[p][col]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const std::vector<QVector>& vectors) {
  if (vectors.empty()) return 0;
  Matrix m = to_columns(vectors, nullptr);
  return rref(m, vectors.size()).size();
}

std::optional<std::vector<Rational>> solve(const std::vector<QVector>& basis, const QVector& target) {
  Matrix m = to_columns(basis, &target);
  auto pivots = rref(m, basis.size());
  for (std::size_t r = pivots.size(); r < m.size(); ++r)
    if (sgn(m[r][basis.size()]) != 0) return std::nullopt;
  std::vector<Rational> c(basis.size(), Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) c[pivots[r]] = m[r][basis.size()];
  return c;
}

bool in_integer_span(const std::vector<QVector>& generators, const QVector& target) {
  if (target.empty()) return true;
  if (generators.empty()) return false;
  // Integer matrix with generators as rows, cleared of denominators.
  Matrix cols = to_columns(generators, &target);
  std::size_t dim = cols.size();
  mpz_class den = 1;
  for (const auto& row : cols)
    for (const auto& x : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<std::vector<mpz_class>> rows(generators.size(), std::vector<mpz_class>(dim));
  std::vector<mpz_class> t(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t j = 0; j < generators.size(); ++j) {
      Rational v = cols[r][j] * den;
      rows[j][r] = v.get_num();
    }
    Rational v = cols[r][generators.size()] * den;
    t[r] = v.get_num();
  }
  // Integer echelon form by gcd row operations.
  std::size_t top = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < dim && top < rows.size(); ++col) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r) {
        if (sgn(rows[r][col]) == 0) continue;
        if (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col])) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (sgn(rows[r][col]) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[top][col].get_mpz_t());
        for (std::size_t c = col; c < dim; ++c) rows[r][c] -= q * rows[top][c];
        if (sgn(rows[r][col]) != 0) done = false;
      }
      if (done) {
        pivot_cols.push_back(col);
        ++top;
        break;
      }
    }
  }
  for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
    std::size_t col = pivot_cols[k];
    if (sgn(t[col]) == 0) continue;
    if (!mpz_divisible_p(t[col].get_mpz_t(), rows[k][col].get_mpz_t())) return false;
    mpz_class q = t[col] / rows[k][col];
    for (std::size_t c = col; c < dim; ++c) t[c] -= q * rows[k][c];
  }
  return std::all_of(t.begin(), t.end(), [](const mpz_class& x) { return sgn(x) == 0; });
}

}  // namespace expzero::qlin
