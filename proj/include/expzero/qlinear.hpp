#pragma once

// Q-linear algebra on exponential polynomials. K = Q(i)[log constants] is a
// Q-vector space with basis {1, i} x {log monomials}, so the nonconstant
// part of any ExpPoly has exact rational coordinates.

#include <optional>
#include <vector>

#include "expzero/exppoly.hpp"

namespace expzero::qlin {

struct Coordinate {
  TermKey key;
  LogMonomial logs;
  bool imaginary = false;
};

struct CoordinateLess {
  bool operator()(const Coordinate& a, const Coordinate& b) const;
};

using QVector = std::map<Coordinate, Rational, CoordinateLess>;

/// Coordinates of g minus its constant term.
QVector flatten(const ExpPoly& g);

std::size_t rank(const std::vector<QVector>& vectors);

/// Some c with sum c_j * basis_j = target, or nullopt. The solution is
/// unique when the basis is independent.
std::optional<std::vector<Rational>> solve(const std::vector<QVector>& basis, const QVector& target);

/// Whether target is an integer combination of the generators.
bool in_integer_span(const std::vector<QVector>& generators, const QVector& target);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace expzero::qlin
