#pragma once

#include <random>
#include <string>
#include <vector>

#include "expzero/parser.hpp"
#include "expzero/poly.hpp"

namespace testing {

inline expzero::ExpPoly P(const std::string& text, std::vector<std::string> vars = {}) {
  if (vars.empty()) return expzero::parse_exppoly(text);
  return expzero::parse_exppoly(text, vars);
}

/// Polynomial over named variables from a string, through the exp-poly parser.
inline expzero::Poly Q(const std::string& text, const std::vector<std::string>& vars) {
  expzero::ExpPoly e = expzero::parse_exppoly(text, vars);
  auto names = expzero::make_vars(vars);
  expzero::Poly out(names);
  for (const auto& [key, c] : e.terms()) {
    expzero::Exponents ex(key.powers.begin(), key.powers.end());
    out.add_term(ex, c);
  }
  return out;
}

}  // namespace testing
