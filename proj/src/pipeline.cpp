#include "expzero/pipeline.hpp"

namespace expzero {

PipelineResult run_pipeline(const ExpPoly& p, const PipelineConfig& config) {
  PipelineResult res;
  Json& doc = res.document;
  doc = Json{{"schema", kSchema}, {"kind", "pipeline"}, {"input", p.render()}, {"height", p.height()}};
  if (!p.is_constant() && !as_pure_exponential(p)) {
    auto nd = normalize_L(refine(extract_decomposition(p)));
    ExpPoly q = nd.substitution.apply(p);
    doc["decomposition"] = decomposition_json(nd.decomposition);
    doc["substitution"] = substitution_json(nd.substitution);
    doc["variety"] = system_json(build_variety(q, nd.decomposition));
  }
  auto out = free_or_poly_loop(p, config.reduction);
  doc["reduction"] = outcome_json(out);
  if (out.tag == ReductionOutcome::Tag::FreeSystem) doc["rotundity"] = report_json(rotundity_probe(*out.system, config.rotundity));
  if (out.tag == ReductionOutcome::Tag::NoZeros) {
    doc["solve"] = Json{{"tag", "NoZeros"}, {"certificate", out.certificate ? out.certificate->render() : ""}};
    return res;
  }
  auto r = find_root(out.final_p, config.root);
  Json s = root_json(r);
  if (r.tag == RootResult::Tag::Root) {
    auto a = out.map_back(r.assignment);
    s["original_assignment"] = complex_vector_json(a);
    s["original_residual"] = std::abs(eval_complex(p, a));
  } else {
    res.root_not_found = true;
  }
  doc["solve"] = s;
  return res;
}

}  // namespace expzero
