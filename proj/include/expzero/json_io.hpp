#pragma once

// JSON documents with schema tag "expzero/1". Polynomials are lists of
// [exponent-vector, coefficient-string] pairs, coefficients exact.

#include "json.hpp"

#include "expzero/decomposition.hpp"
#include "expzero/numeric.hpp"
#include "expzero/reduction.hpp"
#include "expzero/rotundity.hpp"

namespace expzero {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "expzero/1";

Json complex_json(Complex z);
Complex complex_from_json(const Json& j);
Json complex_vector_json(const std::vector<Complex>& v);
std::vector<Complex> complex_vector_from_json(const Json& j);

Json poly_json(const Poly& p);
Poly poly_from_json(const Json& j, const VarList& names);

Json decomposition_json(const Decomposition& t);
Json substitution_json(const Substitution& s);

Json system_json(const VarietySystem& v);
/// Inverse of system_json; throws ContractError on a malformed document.
VarietySystem system_from_json(const Json& j);

Json freeness_json(const FreenessResult& f);
Json factorization_json(const Factorization& f);
Json outcome_json(const ReductionOutcome& o);
Json report_json(const RotundityReport& r);
Json root_json(const RootResult& r);

}  // namespace expzero
