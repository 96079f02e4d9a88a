// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// non-zero if any fails. An optional argument names the CLI binary used for
// the determinism check.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <limits>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "common/corpus_expzero.hpp"
#include "expzero/errors.hpp"
#include "expzero/numeric.hpp"
#include "expzero/parser.hpp"
#include "expzero/pipeline.hpp"
#include "expzero/reduction.hpp"
#include "expzero/rotundity.hpp"

using namespace expzero;
using Clock = std::chrono::steady_clock;

namespace {

const char* kExample = "exp(exp(x1/2+x2^2))+x1^3";

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << id << ": " << detail << std::endl;
  if (!ok) ++failures;
}

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Built {
  Substitution s;
  VarietySystem v;
};

Built build(const ExpPoly& p) {
  auto nd = normalize_L(refine(extract_decomposition(p)));
  return Built{nd.substitution, build_variety(nd.substitution.apply(p), nd.decomposition)};
}

template <class F>
void guarded(int id, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

void height_anchor() {
  auto t0 = Clock::now();
  unsigned h = parse_exppoly(kExample).height();
  double ms = ms_since(t0);
  std::ostringstream d;
  d << "height " << h << " (expected 2), " << ms << " ms (limit 10)";
  report(1, h == 2 && ms < 10.0, d.str());
}

void decomposition_anchor() {
  auto t = extract_decomposition(parse_exppoly(kExample));
  auto vars = *t.vars;
  std::set<std::string> got, want;
  for (const auto& b : t.bricks) got.insert(b.body.render());
  for (const char* s : {"x1/2", "x2/2", "x2^2", "exp(x1/2+x2^2)"}) want.insert(parse_exppoly(s, vars).render());
  bool refined = is_refined(t) && t.refined;
  std::ostringstream d;
  d << got.size() << " bricks, set " << (got == want ? "matches" : "differs") << ", L = " << t.L.get_str()
    << ", refined " << (refined ? "true" : "false");
  report(2, got == want && t.L == 2 && refined, d.str());
}

void reconstruction(const std::vector<corpus::Entry>& entries) {
  std::size_t ok = 0;
  for (const auto& e : entries) {
    try {
      ExpPoly p = parse_exppoly(e.text);
      auto nd = normalize_L(refine(extract_decomposition(p)));
      ExpPoly q = nd.substitution.apply(p);
      if (reconstruct(build_variety(q, nd.decomposition)) == q) ++ok;
    } catch (const Error&) {
    }
  }
  std::ostringstream d;
  d << ok << "/" << entries.size() << " exact reconstructions";
  report(3, entries.size() >= 50 && ok == entries.size(), d.str());
}

void round_trip(const std::vector<corpus::Entry>& entries) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::size_t roots = 0, roots_ok = 0, nonroots = 0, nonroots_ok = 0;
  for (const auto& e : entries) {
    ExpPoly p = parse_exppoly(e.text);
    Built b = build(p);
    auto unscale = [&](const std::vector<Complex>& a) {
      std::vector<Complex> out(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] / b.s.factors[i].get_d();
      return out;
    };
    RootResult r = find_root(p);
    if (r.tag == RootResult::Tag::Root) {
      ++roots;
      if (membership(b.v, witness(b.v, unscale(r.assignment)), 1e-8).member) ++roots_ok;
    }
    for (int k = 0; k < 4 && nonroots < 100; ++k) {
      std::vector<Complex> a(p.nvars());
      for (auto& z : a) z = {u(rng), u(rng)};
      try {
        if (std::abs(eval_complex(p, a)) <= 1e-3) continue;
        bool member = membership(b.v, witness(b.v, unscale(a)), 1e-8).member;
        ++nonroots;
        if (!member) ++nonroots_ok;
      } catch (const NumericRangeError&) {
      }
    }
  }
  std::ostringstream d;
  d << roots_ok << "/" << roots << " root witnesses are members, " << nonroots_ok << "/" << nonroots
    << " non-root witnesses are not";
  report(4, roots >= 20 && roots_ok == roots && nonroots >= 100 && nonroots_ok == nonroots, d.str());
}

void reduction_loop() {
  ExpPoly p = parse_exppoly("exp(exp(x))-2");
  auto o = free_or_poly_loop(p);
  RootResult r = find_root(o.final_p);
  double residual = r.tag == RootResult::Tag::Root ? std::abs(eval_complex(p, o.map_back(r.assignment)))
                                                   : std::numeric_limits<double>::infinity();
  auto z = free_or_poly_loop(parse_exppoly("exp(x1^3)"));
  bool ok = o.reductions() == 2 && o.tag == ReductionOutcome::Tag::Polynomial && residual < 1e-8 &&
            z.tag == ReductionOutcome::Tag::NoZeros;
  std::ostringstream d;
  d << "exp(exp(x))-2: " << o.reductions() << " reductions to " << tag_name(o.tag) << " \"" << o.final_p.render()
    << "\", |p(root)| = " << residual << "; exp(x1^3): " << tag_name(z.tag);
  report(5, ok, d.str());
}

std::vector<VarietySystem> dichotomy(const std::vector<corpus::Entry>& entries) {
  std::vector<VarietySystem> free;
  std::size_t ok = 0, counts[3] = {0, 0, 0};
  for (const auto& e : entries) {
    try {
      ExpPoly p = parse_exppoly(e.text);
      auto o = free_or_poly_loop(p);
      if (o.reductions() > p.height()) continue;
      ++ok;
      ++counts[static_cast<int>(o.tag)];
      if (o.tag == ReductionOutcome::Tag::FreeSystem) free.push_back(*o.system);
    } catch (const Error&) {
    }
  }
  std::ostringstream d;
  d << ok << "/" << entries.size() << " within height iterations (FreeSystem " << counts[0] << ", Polynomial "
    << counts[1] << ", NoZeros " << counts[2] << ")";
  report(6, ok == entries.size(), d.str());
  return free;
}

void rotundity(const std::vector<VarietySystem>& systems) {
  auto t0 = Clock::now();
  std::size_t passed = 0, identity_ok = 0, matrices = 0;
  RotundityConfig config;
  config.trials = 100;
  config.max_entry = 3;
  config.seed = 20261017;
  for (const auto& v : systems) {
    try {
      auto rep = rotundity_probe(v, config);
      matrices += rep.records.size();
      if (rep.pass) ++passed;
      if (rep.identity_rank == v.alpha + v.n - 1) ++identity_ok;
    } catch (const Error&) {
    }
  }
  double s = ms_since(t0) / 1000.0;
  std::ostringstream d;
  d << passed << "/" << systems.size() << " systems pass all trials (" << matrices << " matrices), identity rank "
    << identity_ok << "/" << systems.size() << " exact, " << s << " s (limit 60)";
  report(7, !systems.empty() && passed == systems.size() && identity_ok == systems.size() && s < 60.0, d.str());
}

void numeric_oracles(const std::vector<corpus::Entry>& entries) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const double h = 1e-6;
  std::size_t polys_ok = 0, checks = 0, bad = 0;
  for (const auto& e : entries) {
    ExpPoly p = parse_exppoly(e.text);
    int points = 0;
    for (int attempt = 0; points < 100 && attempt < 1000; ++attempt) {
      std::vector<Complex> x(p.nvars()), grad, fd(p.nvars());
      for (auto& z : x) z = {u(rng), u(rng)};
      Complex value;
      try {
        value = eval_gradient(p, x, grad);
        for (std::size_t v = 0; v < x.size(); ++v) {
          auto xp = x, xm = x;
          xp[v] += h;
          xm[v] -= h;
          fd[v] = (eval_complex(p, xp) - eval_complex(p, xm)) / (2.0 * h);
        }
      } catch (const NumericRangeError&) {
        continue;
      }
      double rounding = std::numeric_limits<double>::epsilon() * std::abs(value) / h;
      bool resolvable = true;
      for (std::size_t v = 0; v < x.size(); ++v)
        resolvable = resolvable && rounding <= 1e-6 * std::max({std::abs(grad[v]), std::abs(fd[v]), 1.0});
      if (!resolvable) continue;
      ++points;
      for (std::size_t v = 0; v < x.size(); ++v) {
        double scale = std::max({std::abs(grad[v]), std::abs(fd[v]), 1.0});
        ++checks;
        if (std::abs(grad[v] - fd[v]) > 1e-5 * scale) ++bad;
      }
    }
    if (points == 100) ++polys_ok;
  }
  RootResult r = find_root(parse_exppoly("exp(z)+z"));
  bool root_ok = r.tag == RootResult::Tag::Root && r.residual < 1e-12;
  std::ostringstream d;
  d << polys_ok << "/" << entries.size() << " polynomials with 100 points, " << bad << "/" << checks
    << " derivative mismatches; exp(z)+z residual " << r.residual;
  report(8, polys_ok == entries.size() && bad == 0 && root_ok, d.str());
}

std::string run_command(const std::string& cmd) {
  std::array<char, 4096> buf;
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) throw std::runtime_error("cannot run " + cmd);
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe.get())) out.append(buf.data(), n);
  return out;
}

void determinism(const char* cli) {
  PipelineConfig cfg;
  cfg.rotundity.seed = 7;
  cfg.root.seed = 7;
  ExpPoly p = parse_exppoly(kExample);
  bool same = run_pipeline(p, cfg).document.dump() == run_pipeline(p, cfg).document.dump();
  std::string detail = std::string("in-process documents ") + (same ? "identical" : "differ");
  if (cli) {
    std::string cmd = std::string("\"") + cli + "\" pipeline \"" + kExample + "\" --seed 7";
    std::string a = run_command(cmd), b = run_command(cmd);
    bool cli_same = !a.empty() && a == b;
    same = same && cli_same;
    detail += std::string(", CLI output ") + (cli_same ? "identical" : "differs") + " (" + std::to_string(a.size()) +
              " bytes)";
  }
  report(9, same, detail);
}

}  // namespace

int main(int argc, char** argv) {
  auto entries = corpus::standard();
  guarded(1, height_anchor);
  guarded(2, decomposition_anchor);
  guarded(3, [&] { reconstruction(entries); });
  guarded(4, [&] { round_trip(entries); });
  guarded(5, reduction_loop);
  std::vector<VarietySystem> free;
  guarded(6, [&] { free = dichotomy(entries); });
  guarded(7, [&] { rotundity(free); });
  guarded(8, [&] { numeric_oracles(entries); });
  guarded(9, [&] { determinism(argc > 1 ? argv[1] : nullptr); });
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
