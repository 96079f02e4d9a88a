#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "expzero/json_io.hpp"
#include "expzero/parser.hpp"
#include "expzero/pipeline.hpp"

using namespace expzero;

namespace {

enum Exit { kOk = 0, kOther = 1, kParse = 2, kBudget = 3, kInconclusive = 4, kNotFound = 5 };

struct Options {
  std::string expr;
  std::string vars;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  long max_entry = 3;
  std::size_t samples = 5;
  double tol = 1e-10;
  long branch = 0;
  std::string format;
  std::string load;
  std::string at;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

ExpPoly read_expr(const Options& o) {
  std::string text = o.expr;
  if (text == "-") text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  std::optional<std::vector<std::string>> vars;
  if (!o.vars.empty()) vars = split(o.vars, ',');
  return parse_exppoly(text, vars);
}

// "a,b;c,d" -> (a+bi, c+di); a bare "a" is real.
std::vector<Complex> parse_point(const std::string& s) {
  std::vector<Complex> out;
  for (const auto& part : split(s, ';')) {
    auto reim = split(part, ',');
    if (reim.empty() || reim.size() > 2) throw CLI::ValidationError("--at", "expected re[,im] per coordinate");
    out.emplace_back(std::stod(reim[0]), reim.size() == 2 ? std::stod(reim[1]) : 0.0);
  }
  return out;
}

void emit(const Options& o, const Json& j, const std::string& text) {
  if (o.format == "text")
    std::cout << text << "\n";
  else
    std::cout << j.dump(2) << "\n";
}

Json with_schema(const std::string& kind, Json body) {
  Json out{{"schema", kSchema}, {"kind", kind}};
  for (auto& [k, v] : body.items()) out[k] = v;
  return out;
}

struct Normalized {
  ExpPoly p;
  NormalizedDecomposition nd;
  VarietySystem v;
};

Normalized normalized_system(const ExpPoly& p) {
  auto raw = extract_decomposition(p);
  auto nd = normalize_L(refine(raw));
  ExpPoly q = nd.substitution.apply(p);
  return Normalized{q, nd, build_variety(q, nd.decomposition)};
}

RotundityConfig rotundity_config(const Options& o) {
  RotundityConfig c;
  c.trials = o.trials;
  c.max_entry = o.max_entry;
  c.seed = o.seed;
  c.probe.samples = o.samples;
  return c;
}

RootConfig root_config(const Options& o) {
  RootConfig c;
  c.tol = o.tol;
  c.seed = o.seed;
  return c;
}

int cmd_parse(const Options& o) {
  ExpPoly p = read_expr(o);
  emit(o, with_schema("parse", Json{{"vars", *p.vars()}, {"normal_form", p.render()}, {"height", p.height()}}),
       p.render());
  return kOk;
}

int cmd_height(const Options& o) {
  ExpPoly p = read_expr(o);
  emit(o, with_schema("height", Json{{"expr", p.render()}, {"height", p.height()}}), std::to_string(p.height()));
  return kOk;
}

int cmd_decompose(const Options& o) {
  ExpPoly p = read_expr(o);
  auto raw = extract_decomposition(p);
  auto refined = refine(raw);
  auto nd = normalize_L(refined);
  std::string text;
  for (const auto& b : brick_strings(refined)) text += b + "\n";
  text += "L = " + refined.L.get_str();
  emit(o,
       with_schema("decompose", Json{{"extracted", decomposition_json(raw)},
                                     {"refined", decomposition_json(refined)},
                                     {"normalized", decomposition_json(nd.decomposition)},
                                     {"substitution", substitution_json(nd.substitution)}}),
       text);
  return kOk;
}

int cmd_variety(const Options& o) {
  VarietySystem v;
  Json doc;
  if (!o.load.empty()) {
    std::ifstream in(o.load);
    if (!in) throw std::runtime_error("cannot open " + o.load);
    v = system_from_json(Json::parse(in));
    doc = system_json(v);
  } else {
    auto ns = normalized_system(read_expr(o));
    v = ns.v;
    doc = system_json(v);
    doc["input"] = ns.p.render();
    doc["substitution"] = substitution_json(ns.nd.substitution);
  }
  if (!o.at.empty()) {
    GPoint pt = witness(v, parse_point(o.at));
    auto m = membership(v, pt, o.tol);
    doc["witness"] = Json{{"x", complex_vector_json(pt.x)},
                          {"w", complex_vector_json(pt.w)},
                          {"y", complex_vector_json(pt.y)},
                          {"member", m.member},
                          {"residual", m.residual}};
  }
  emit(o, doc, "p* = " + v.hypersurface.render());
  return kOk;
}

int cmd_reduce(const Options& o) {
  ReductionConfig cfg;
  cfg.branch = o.branch;
  auto out = free_or_poly_loop(read_expr(o), cfg);
  emit(o, with_schema("reduction", outcome_json(out)), tag_name(out.tag) + ": " + out.final_p.render());
  return kOk;
}

int cmd_rotundity(const Options& o) {
  auto ns = normalized_system(read_expr(o));
  auto fr = freeness_check(ns.v);
  if (!fr.is_free()) {
    emit(o, with_schema("rotundity", Json{{"refused", "system is not free"}, {"freeness", freeness_json(fr)}}),
         "not free: " + tag_name(fr.tag) + " exp(" + (fr.g ? fr.g->render() : "") + ") = " + fr.render_b());
    return kOk;
  }
  auto rep = rotundity_probe(ns.v, rotundity_config(o));
  emit(o, with_schema("rotundity", Json{{"system", system_json(ns.v)}, {"report", report_json(rep)}}),
       std::string(rep.pass ? "pass" : "fail") + " identity rank " + std::to_string(rep.identity_rank) + "/" +
           std::to_string(rep.expected_dimension));
  return kOk;
}

std::string root_text(const RootResult& r) {
  std::ostringstream out;
  out.precision(16);
  for (const auto& z : r.assignment) out << z << " ";
  out << "residual " << r.residual;
  return out.str();
}

int cmd_solve(const Options& o) {
  ExpPoly p = read_expr(o);
  auto r = find_root(p, root_config(o));
  emit(o, with_schema("solve", Json{{"expr", p.render()}, {"result", root_json(r)}}),
       r.tag == RootResult::Tag::Root ? root_text(r) : (r.tag == RootResult::Tag::NoZeros ? "no zeros" : "not found"));
  return r.tag == RootResult::Tag::NotFound ? kNotFound : kOk;
}

int cmd_pipeline(const Options& o) {
  ExpPoly p = read_expr(o);
  PipelineConfig cfg;
  cfg.reduction.branch = o.branch;
  cfg.rotundity = rotundity_config(o);
  cfg.root = root_config(o);
  auto res = run_pipeline(p, cfg);
  const Json& red = res.document["reduction"];
  emit(o, res.document, red["tag"].get<std::string>() + ": " + red["final"].get<std::string>());
  return res.root_not_found ? kNotFound : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numeric tools for exponential polynomials"};
  app.require_subcommand(1);
  Options o;
  std::map<std::string, std::function<int(const Options&)>> handlers{
      {"parse", cmd_parse},         {"height", cmd_height}, {"decompose", cmd_decompose},
      {"variety", cmd_variety},     {"reduce", cmd_reduce}, {"rotundity", cmd_rotundity},
      {"solve", cmd_solve},         {"pipeline", cmd_pipeline}};
  std::map<std::string, std::string> help{
      {"parse", "Print the normal form"},
      {"height", "Print the height"},
      {"decompose", "Extract, refine and normalize a decomposition"},
      {"variety", "Build the witness variety, or load one with --load"},
      {"reduce", "Run the freeness and height-reduction loop"},
      {"rotundity", "Probe rotundity of the witness variety"},
      {"solve", "Find a complex root numerically"},
      {"pipeline", "Run every stage and emit one JSON document"}};
  for (const auto& [name, fn] : handlers) {
    auto* sub = app.add_subcommand(name, help[name]);
    auto* expr = sub->add_option("expr", o.expr, "Expression, or - for stdin");
    if (name == "variety") {
      sub->add_option("--load", o.load, "Read a variety JSON document instead of an expression");
      sub->add_option("--at", o.at, "Point re,im;re,im;.. for the witness and membership check");
    } else {
      expr->required();
    }
    sub->add_option("--vars", o.vars, "Comma-separated variable list (strict mode)");
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    sub->add_option("--trials", o.trials, "Rotundity matrices")->capture_default_str();
    sub->add_option("--max-entry", o.max_entry, "Largest |entry| of probe matrices")->capture_default_str();
    sub->add_option("--samples", o.samples, "Points per rank probe")->capture_default_str();
    sub->add_option("--tol", o.tol, "Numeric tolerance")->capture_default_str();
    sub->add_option("--branch", o.branch, "Branch index for introduced logarithms")->capture_default_str();
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  }
  CLI11_PARSE(app, argc, argv);

  auto* chosen = app.get_subcommands().front();
  std::string name = chosen->get_name();
  if (o.format.empty()) o.format = (name == "parse" || name == "height") ? "text" : "json";
  if (name == "variety" && o.expr.empty() && o.load.empty()) {
    std::cerr << "error: variety needs an expression or --load\n";
    return kOther;
  }
  try {
    return handlers[name](o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const MalformedTermError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\npartial: " << e.partial() << "\n";
    return kBudget;
  } catch (const ProbeInconclusiveError& e) {
    std::cerr << "probe inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
}
