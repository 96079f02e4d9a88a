#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "expzero/parser.hpp"
#include "expzero/pipeline.hpp"

namespace py = pybind11;
using namespace expzero;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

ExpPoly parse_text(const std::string& text, const std::optional<std::vector<std::string>>& vars) {
  return parse_exppoly(text, vars);
}

Poly as_poly(const ExpPoly& p) {
  if (p.height() != 0) throw ContractError("factor needs a polynomial of height 0");
  Poly out(p.vars());
  for (const auto& [key, c] : p.terms()) out.add_term(Exponents(key.powers.begin(), key.powers.end()), c);
  return out;
}

VarietySystem system_of(const ExpPoly& p) {
  auto nd = normalize_L(refine(extract_decomposition(p)));
  return build_variety(nd.substitution.apply(p), nd.decomposition);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact and numeric tools for exponential polynomials";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<MalformedTermError>(m, "MalformedTermError", base);
  py::register_exception<BudgetError>(m, "BudgetError", base);
  py::register_exception<ContractError>(m, "ContractError", base);
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError", base);
  py::register_exception<NumericRangeError>(m, "NumericRangeError", base);
  py::register_exception<ProbeInconclusiveError>(m, "ProbeInconclusiveError", base);

  py::class_<ExpPoly>(m, "ExpPoly")
      .def_property_readonly("height", &ExpPoly::height)
      .def_property_readonly("vars", [](const ExpPoly& p) { return *p.vars(); })
      .def("render", &ExpPoly::render)
      .def("__str__", &ExpPoly::render)
      .def("__repr__", [](const ExpPoly& p) { return "ExpPoly(" + p.render() + ")"; })
      .def("eval", [](const ExpPoly& p, const std::vector<Complex>& x) { return eval_complex(p, x); })
      .def("__eq__", [](const ExpPoly& a, const ExpPoly& b) { return a == b; })
      .def("__add__", [](const ExpPoly& a, const ExpPoly& b) { return a + b; })
      .def("__sub__", [](const ExpPoly& a, const ExpPoly& b) { return a - b; })
      .def("__mul__", [](const ExpPoly& a, const ExpPoly& b) { return a * b; });

  m.def("parse", &parse_text, py::arg("text"), py::arg("vars") = py::none());

  m.def(
      "factor",
      [](const std::string& text, const std::optional<std::vector<std::string>>& vars) {
        auto f = factor(as_poly(parse_exppoly(text, vars)));
        std::vector<std::pair<std::string, unsigned>> out;
        for (const auto& fac : f.factors) out.emplace_back(fac.poly.render(), fac.multiplicity);
        return std::make_pair(f.unit.render(), out);
      },
      py::arg("text"), py::arg("vars") = py::none());

  m.def(
      "decompose",
      [](const std::string& text) {
        auto refined = refine(extract_decomposition(parse_exppoly(text)));
        return to_py(decomposition_json(refined));
      },
      py::arg("text"));

  m.def("variety", [](const std::string& text) { return to_py(system_json(system_of(parse_exppoly(text)))); },
        py::arg("text"));

  m.def(
      "reduce",
      [](const std::string& text, long branch) {
        ReductionConfig cfg;
        cfg.branch = branch;
        return to_py(outcome_json(free_or_poly_loop(parse_exppoly(text), cfg)));
      },
      py::arg("text"), py::arg("branch") = 0);

  m.def(
      "rotundity",
      [](const std::string& text, std::size_t trials, long max_entry, std::uint64_t seed) {
        RotundityConfig cfg;
        cfg.trials = trials;
        cfg.max_entry = max_entry;
        cfg.seed = seed;
        return to_py(report_json(rotundity_probe(system_of(parse_exppoly(text)), cfg)));
      },
      py::arg("text"), py::arg("trials") = 100, py::arg("max_entry") = 3, py::arg("seed") = 0);

  m.def(
      "solve",
      [](const std::string& text, double tol, std::uint64_t seed) {
        RootConfig cfg;
        cfg.tol = tol;
        cfg.seed = seed;
        return to_py(root_json(find_root(parse_exppoly(text), cfg)));
      },
      py::arg("text"), py::arg("tol") = 1e-10, py::arg("seed") = 0);

  m.def(
      "pipeline",
      [](const std::string& text, std::uint64_t seed) {
        PipelineConfig cfg;
        cfg.rotundity.seed = seed;
        cfg.root.seed = seed;
        return to_py(run_pipeline(parse_exppoly(text), cfg).document);
      },
      py::arg("text"), py::arg("seed") = 0);
}
