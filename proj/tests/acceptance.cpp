// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "setasp/cli.hpp"
#include "setasp/gz.hpp"
#include "setasp/parser.hpp"
#include "setasp/printer.hpp"
#include "setasp/props.hpp"
#include "setasp/solver.hpp"

#ifndef SETASP_PROGRAMS_DIR
#error "SETASP_PROGRAMS_DIR must point at the sample programs"
#endif

using namespace setasp;

namespace {

using Models = std::vector<std::vector<Atom>>;

const char* kSetValue = "r(1). r(2). q(1).\nq(2) :- Z = {X : r(X)}, p(Z).\np(Y) :- Y = {X : q(X)}.";
const char* kCountOne = "p(a) :- count{X : p(X)} >= 1.\np(b).";
const char* kSum = "p(2). p(3).\nq(Y) :- sum{X : p(X)} = Y.";
const char* kCountNeq = "p(a) :- count{X : p(X), X != a} >= 1.\np(b).";
const char* kCountZero = "p(a) :- count{X : p(X)} >= 0.";

Value I(std::int64_t v) { return Value::integer(v); }
Atom A(const char* p, Value v) { return Atom{p, {std::move(v)}}; }
Atom Pa() { return A("p", Value::symbol("a")); }
Atom Pb() { return A("p", Value::symbol("b")); }

DomainBounds ints(int lo, int hi) {
  DomainBounds b;
  b.min_int = lo;
  b.max_int = hi;
  return b;
}

Models equilibrium(const char* text, const DomainBounds& b) {
  Models out;
  for (const auto& m : find_stable_models(parse_program(text), b).models) out.push_back(m.atoms);
  return out;
}

int cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "setasp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  int st = run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  return st;
}

std::string program(const char* name) { return std::string(SETASP_PROGRAMS_DIR) + "/" + name; }

struct Outcome {
  bool ok = false;
  std::string detail;
};

bool set_value(std::string& detail) {
  DomainBounds b = ints(1, 2);
  Theory th = parse_program(kSetValue);
  auto r = find_stable_models(th, b);
  std::vector<Atom> want = {A("p", Value::set({I(1)})), A("q", I(1)), A("r", I(1)), A("r", I(2))};
  if (r.models.size() != 1 || r.models[0].atoms != want) return detail = "wrong stable models", false;
  const auto& sets = r.models[0].sigma.derived;
  auto at = [&](const char* k) { return sets.count(k) ? sets.at(k) : Value::undef(); };
  if (at("{X:r(X)}") != Value::set({I(1), I(2)}) || at("{X:q(X)}") != Value::set({I(1)}))
    return detail = "wrong witness assignment", false;

  EvalContext ctx = make_context(th, b);
  GroundTheory gt = ground_theory(th, ctx.domain);
  Value s12 = Value::set({I(1), I(2)});
  std::set<Atom> t = {A("q", I(1)), A("q", I(2)), A("p", s12), A("r", I(1)), A("r", I(2))};
  EquilibriumCheck c = check_equilibrium(ctx, gt, {}, t);
  std::set<Atom> h = t;
  h.erase(A("q", I(2)));
  h.erase(A("p", s12));
  if (c.equilibrium || !c.countermodel || c.countermodel->atoms_h != h || c.countermodel->atoms_t != t)
    return detail = "second candidate not refuted by the expected countermodel", false;
  detail = "1 model, sigma ok, countermodel H = T minus {q(2), p({1,2})}";
  return true;
}

bool zero_both(const char* text, const char* file, std::string& detail) {
  Theory th = parse_program(text);
  bool ok = find_stable_models(th, {}).models.empty() && gz_stable_models(th, {}).empty();
  std::string out;
  int st = cli({"solve", program(file), "--mode", "both"}, &out);
  ok = ok && st == 0 && out.find("AGREE") != std::string::npos;
  detail = "0 models in both engines, cli exit " + std::to_string(st);
  return ok;
}

bool p3(std::string& detail) {
  Models m = equilibrium(kSum, ints(0, 6));
  detail = std::to_string(m.size()) + " model(s)";
  return m == Models{{A("p", I(2)), A("p", I(3)), A("q", I(5))}};
}

std::vector<std::string> sorted_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  std::sort(out.begin(), out.end());
  return out;
}

bool p4(std::string& detail) {
  Theory th = parse_program(kCountNeq);
  Models want = {{Pa(), Pb()}};
  bool models_ok = equilibrium(kCountNeq, {}) == want && gz_stable_models(th, {}) == want;
  std::string out;
  int st = cli({"ground", program("count_neq.lp"), "--reduct-for", "p(a), p(b)"}, &out);
  bool reduct_ok = st == 0 && sorted_lines(out) == std::vector<std::string>{"p(a) :- p(b).", "p(b)."};
  detail = std::string("models ") + (models_ok ? "ok" : "wrong") + ", reduct " + (reduct_ok ? "ok" : "wrong");
  return models_ok && reduct_ok;
}

bool differential(std::string& detail) {
  CrossCheckReport r = run_cross_check_trials(200, 1);
  detail = std::to_string(r.agreements) + "/" + std::to_string(r.trials) + " agree";
  return r.trials == 200 && r.agreements == 200;
}

bool report(const PropertyResult& r, std::string& detail) {
  detail = std::to_string(r.checked) + " checked, " + std::to_string(r.violations) + " violations";
  if (!r.failures.empty()) detail += "; " + r.failures.front();
  return r.ok();
}

bool existential(std::string& detail) {
  std::vector<NamedProgram> named = {{"count_one", kCountOne, {}}, {"count_neq", kCountNeq, {}}};
  return report(check_existential_intro(named, 50, 1), detail);
}

struct Criterion {
  const char* name;
  double limit_seconds;  // 0 means untimed
  std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"set-valued program: unique model, witness, countermodel", 5, set_value},
      {"count >= 1 program: no stable models", 1, [](std::string& d) { return zero_both(kCountOne, "count_one.lp", d); }},
      {"sum program: unique model", 2, p3},
      {"count with inequality: model and reduct", 1, p4},
      {"count >= 0 program: no stable models", 1, [](std::string& d) { return zero_both(kCountZero, "count_zero.lp", d); }},
      {"200 random fragment programs: engines agree", 60, differential},
      {"existential introduction preserves models", 0, existential},
      {"persistence and negation", 0,
       [](std::string& d) { return report(check_persistence_negation(1000, 1), d); }},
      {"aggregate definitions", 0, [](std::string& d) { return report(check_definitional_consistency(), d); }},
      {"conservativity over set-free theories", 0,
       [](std::string& d) { return report(check_conservativity(50, 1), d); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    std::string detail;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      ok = false;
      detail += " (over the time limit)";
    }
    failed += !ok;
    std::printf("%s  %2zu  %-58s %8.3fs  %s\n", ok ? "PASS" : "FAIL", i + 1, c.name, secs, detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
