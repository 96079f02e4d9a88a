#include "expzero/json_io.hpp"

#include "expzero/errors.hpp"
#include "expzero/parser.hpp"

namespace expzero {

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ContractError("complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_vector_json(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(complex_json(z));
  return out;
}

std::vector<Complex> complex_vector_from_json(const Json& j) {
  std::vector<Complex> out;
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

Json poly_json(const Poly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) out.push_back(Json::array({e, c.render()}));
  return out;
}

Poly poly_from_json(const Json& j, const VarList& names) {
  if (!j.is_array()) throw ContractError("polynomial must be a list of [exponents, coefficient]");
  Poly p(names);
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2) throw ContractError("polynomial term must be [exponents, coefficient]");
    auto e = t[0].get<Exponents>();
    if (e.size() != names->size()) throw ContractError("exponent vector has the wrong length");
    p.add_term(e, parse_scalar(t[1].get<std::string>()));
  }
  return p;
}

namespace {

std::vector<std::string> rationals(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  for (const auto& r : v) out.push_back(r.get_str());
  return out;
}

}  // namespace

Json decomposition_json(const Decomposition& t) {
  Json bricks = Json::array();
  for (const auto& b : t.bricks) bricks.push_back(Json{{"body", b.body.render()}, {"height", b.height}});
  return Json{{"vars", *t.vars}, {"n", t.n},           {"alpha", t.alpha()},
              {"L", t.L.get_str()}, {"refined", t.refined}, {"bricks", bricks}};
}

Json substitution_json(const Substitution& s) { return Json{{"factors", rationals(s.factors)}}; }

Json system_json(const VarietySystem& v) {
  Json bricks = Json::array();
  for (const auto& b : v.bricks) bricks.push_back(b.render());
  Json graph = Json::array();
  for (const auto& g : v.graph) graph.push_back(poly_json(g));
  return Json{{"schema", kSchema},
              {"kind", "variety"},
              {"n", v.n},
              {"alpha", v.alpha},
              {"xvars", *v.xvars},
              {"names", *v.names},
              {"bricks", bricks},
              {"graph", graph},
              {"hypersurface", poly_json(v.hypersurface)},
              {"hypersurface_text", v.hypersurface.render()},
              {"shift", v.shift},
              {"no_zeros", v.no_zeros}};
}

VarietySystem system_from_json(const Json& j) {
  try {
    if (j.value("schema", "") != kSchema) throw ContractError("unknown or missing schema tag");
    VarietySystem v;
    v.n = j.at("n").get<std::size_t>();
    v.alpha = j.at("alpha").get<std::size_t>();
    v.xvars = make_vars(j.at("xvars").get<std::vector<std::string>>());
    v.names = make_vars(j.at("names").get<std::vector<std::string>>());
    if (v.xvars->size() != v.n || v.names->size() != v.n + v.alpha || v.alpha < v.n)
      throw ContractError("variety dimensions are inconsistent");
    for (const auto& b : j.at("bricks")) v.bricks.push_back(parse_exppoly(b.get<std::string>(), *v.xvars));
    for (const auto& g : j.at("graph")) v.graph.push_back(poly_from_json(g, v.names));
    v.hypersurface = poly_from_json(j.at("hypersurface"), v.names);
    v.shift = j.at("shift").get<std::vector<int>>();
    v.no_zeros = j.at("no_zeros").get<bool>();
    if (v.bricks.size() != v.alpha || v.graph.size() != v.alpha - v.n || v.shift.size() != v.alpha)
      throw ContractError("variety dimensions are inconsistent");
    for (std::size_t i = v.n; i < v.alpha; ++i)
      if (reconstruct_graph(v, i) != v.bricks[i]) throw ContractError("graph polynomial does not match its brick");
    return v;
  } catch (const Json::exception& e) {
    throw ContractError(std::string("malformed variety document: ") + e.what());
  }
}

Json freeness_json(const FreenessResult& f) {
  Json out{{"tag", tag_name(f.tag)}};
  if (f.tag == FreenessResult::Tag::NotFreeMultiplicative) {
    out["m"] = f.m;
    out["b"] = f.render_b();
    if (f.g) out["g"] = f.g->render();
  }
  return out;
}

Json factorization_json(const Factorization& f) {
  Json factors = Json::array();
  for (const auto& fac : f.factors)
    factors.push_back(Json{{"poly", fac.poly.render()}, {"multiplicity", fac.multiplicity}});
  return Json{{"unit", f.unit.render()}, {"factors", factors}};
}

Json outcome_json(const ReductionOutcome& o) {
  Json trace = Json::array();
  for (const auto& s : o.trace) {
    Json step{{"kind", tag_name(s.kind)},       {"input", s.input},   {"pstar", s.pstar},
              {"factors", s.factors},           {"chosen", s.chosen}, {"height_before", s.height_before},
              {"height_after", s.height_after}, {"result", s.result}};
    if (s.kind == ReductionStep::Kind::Reduce) {
      step["m"] = s.m;
      step["b"] = s.b;
      step["branch"] = s.branch;
    }
    trace.push_back(step);
  }
  Json out{{"tag", tag_name(o.tag)},
           {"final", o.final_p.render()},
           {"reductions", o.reductions()},
           {"scale", rationals(o.scale)},
           {"trace", trace}};
  if (o.polynomial) out["polynomial"] = o.polynomial->render();
  if (o.certificate) out["certificate"] = o.certificate->render();
  if (o.system) out["system"] = system_json(*o.system);
  return out;
}

Json report_json(const RotundityReport& r) {
  Json records = Json::array();
  for (const auto& m : r.records) {
    Json rec{{"trial", m.trial}, {"C", Json::array()}, {"r", m.r},       {"samples", m.samples},
             {"rank", m.rank},   {"pass", m.pass},     {"inconclusive", m.inconclusive}};
    for (std::size_t i = 0; i < m.c.rows; ++i) {
      Json row = Json::array();
      for (std::size_t k = 0; k < m.c.cols; ++k) row.push_back(m.c(i, k));
      rec["C"].push_back(row);
    }
    if (!m.warning.empty()) rec["warning"] = m.warning;
    records.push_back(rec);
  }
  return Json{{"seed", r.seed},
              {"alpha", r.alpha},
              {"n", r.n},
              {"max_entry", r.max_entry},
              {"trials", r.records.size()},
              {"identity_rank", r.identity_rank},
              {"expected_dimension", r.expected_dimension},
              {"inconclusive", r.inconclusive},
              {"pass", r.pass},
              {"note", "matrices are sampled; a pass is evidence, not a proof, of rotundity"},
              {"records", records}};
}

Json root_json(const RootResult& r) {
  Json out;
  switch (r.tag) {
    case RootResult::Tag::Root:
      out = Json{{"tag", "Root"},
                 {"assignment", complex_vector_json(r.assignment)},
                 {"residual", r.residual},
                 {"iterations", r.iterations},
                 {"seeds_tried", r.seeds_tried},
                 {"variable", r.variable}};
      break;
    case RootResult::Tag::NoZeros:
      out = Json{{"tag", "NoZeros"}, {"certificate", r.certificate ? r.certificate->render() : ""}};
      break;
    case RootResult::Tag::NotFound:
      out = Json{{"tag", "NotFound"}, {"residual", r.residual}, {"seeds_tried", r.seeds_tried}};
      break;
  }
  return out;
}

}  // namespace expzero
