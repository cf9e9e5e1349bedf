#include "setasp/props.hpp"

#include <bit>
#include <chrono>
#include <optional>
#include <set>
#include <random>

#include "setasp/builtins.hpp"
#include "setasp/gz.hpp"
#include "setasp/parser.hpp"
#include "setasp/printer.hpp"
#include "setasp/solver.hpp"
#include "setasp/sqhtf.hpp"
#include "setasp/transform.hpp"

#ifdef SETASP_HAVE_OPENMP
#include <omp.h>
#endif

namespace setasp {

void PropertyResult::fail(std::string what) {
  ++violations;
  if (failures.size() < 5) failures.push_back(std::move(what));
}

namespace {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string models_text(const std::vector<std::vector<Atom>>& ms) {
  std::string out = "[";
  for (std::size_t i = 0; i < ms.size(); ++i) {
    out += i ? ", {" : "{";
    for (std::size_t j = 0; j < ms[i].size(); ++j) out += (j ? "," : "") + ms[i][j].to_string();
    out += "}";
  }
  return out + "]";
}

std::vector<std::vector<Atom>> eq_models(const Theory& th, const DomainBounds& b,
                                         bool prune = true) {
  SolveOptions opts;
  opts.prune = prune;
  opts.parallel = false;
  std::vector<std::vector<Atom>> out;
  for (auto& m : find_stable_models(th, b, opts).models) out.push_back(std::move(m.atoms));
  return out;
}

// Random closed formulas over p/1, q/1, r/0 and the function f/0.
class FormulaGen {
 public:
  explicit FormulaGen(std::mt19937_64& rng) : rng_(rng) {}

  std::string formula(int depth, std::vector<std::string>& scope) {
    int choice = depth == 0 ? 0 : pick(9);
    switch (choice) {
      case 1: return "(" + formula(depth - 1, scope) + ", " + formula(depth - 1, scope) + ")";
      case 2: return "(" + formula(depth - 1, scope) + "; " + formula(depth - 1, scope) + ")";
      case 3: return "(" + formula(depth - 1, scope) + " -> " + formula(depth - 1, scope) + ")";
      case 4: return "not " + formula(depth - 1, scope);
      case 5:
      case 6: {
        std::string v = fresh();
        scope.push_back(v);
        std::string body = formula(depth - 1, scope);
        scope.pop_back();
        return std::string(choice == 5 ? "exists " : "forall ") + v + " (" + body + ")";
      }
      default: return atom(depth, scope);
    }
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::string fresh() { return "V" + std::to_string(++vars_); }

  std::string set(int depth, std::vector<std::string>& scope) {
    std::string v = fresh();
    scope.push_back(v);
    std::string body = formula(std::max(0, depth - 1), scope);
    scope.pop_back();
    return "{" + v + " : " + body + "}";
  }

  std::string term(int depth, std::vector<std::string>& scope) {
    int choice = pick(depth > 0 ? 8 : 5);
    switch (choice) {
      case 0: {
        const char* cs[] = {"a", "b", "0", "1", "2"};
        return cs[pick(5)];
      }
      case 1: return "f";
      case 2:
      case 3:
        if (!scope.empty()) return scope[static_cast<std::size_t>(pick(static_cast<int>(scope.size())))];
        return "a";
      case 4: return std::to_string(pick(3));
      case 5: return set(depth, scope);
      case 6: return "count" + set(depth, scope);
      default: return "sum" + set(depth, scope);
    }
  }

  std::string atom(int depth, std::vector<std::string>& scope) {
    switch (pick(8)) {
      case 0: return "p(" + term(depth, scope) + ")";
      case 1: return "q(" + term(depth, scope) + ")";
      case 2: return "r";
      case 3: return term(depth, scope) + " = " + term(depth, scope);
      case 4: return term(depth, scope) + " >= " + term(depth, scope);
      case 5: return term(depth, scope) + " != " + term(depth, scope);
      case 6: return term(depth, scope) + " in " + term(depth, scope);
      default: return "p(" + term(depth, scope) + ")";
    }
  }

  std::mt19937_64& rng_;
  int vars_ = 0;
};

}  // namespace

PropertyResult check_persistence_negation(std::size_t pairs, std::uint64_t seed) {
  Timer timer;
  PropertyResult res;
  res.name = "persistence-negation";
  Theory th = parse_program("#function f/0 : {a; b}.");
  EvalContext ctx;
  ctx.theory = &th;
  ctx.bounds.min_int = 0;
  ctx.bounds.max_int = 4;
  std::vector<Value> base = {Value::symbol("a"), Value::symbol("b"), Value::integer(0),
                             Value::integer(1), Value::integer(2)};
  ctx.domain = base;
  ctx.domain.push_back(Value::set({}));
  for (std::size_t i = 0; i < base.size(); ++i) {
    ctx.domain.push_back(Value::set({base[i]}));
    for (std::size_t j = i + 1; j < base.size(); ++j) ctx.domain.push_back(Value::set({base[i], base[j]}));
  }
  std::vector<Atom> universe;
  for (const char* p : {"p", "q"})
    for (const auto& v : base) universe.push_back({p, {v}});
  for (const auto& s : {Value::set({}), Value::set({base[0]})}) universe.push_back({"p", {s}});
  universe.push_back({"r", {}});

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t n = 0; n < pairs; ++n) {
    FormulaGen gen(rng);
    std::vector<std::string> scope;
    std::string text = gen.formula(3, scope);
    FormulaPtr phi = parse_formula(text, th);
    std::set<Atom> H, T;
    for (const auto& a : universe) {
      if (!coin(rng)) continue;
      T.insert(a);
      if (coin(rng)) H.insert(a);
    }
    Assignment st, sh;
    int f = std::uniform_int_distribution<int>(0, 2)(rng);
    if (f > 0) st.facts[{"f", {}}] = Value::symbol(f == 1 ? "a" : "b");
    if (coin(rng)) sh = st;
    AtomSetOracle oracle(H, T);
    Evaluator ev(ctx, oracle, sh, st);
    Env env;
    bool at_h = ev.sat(*phi, env, World::Here);
    bool at_t = ev.sat(*phi, env, World::There);
    FormulaPtr neg = make_not(phi);
    bool neg_h = ev.sat(*neg, env, World::Here);
    bool neg_t = ev.sat(*neg, env, World::There);
    ++res.checked;
    if (at_h && !at_t) res.fail("persistence: " + text);
    if (neg_h == at_t || neg_t == at_t) res.fail("negation: " + text);
  }
  res.seconds = timer.seconds();
  return res;
}

PropertyResult check_definitional_consistency() {
  Timer timer;
  PropertyResult res;
  res.name = "definitional-consistency";
  std::vector<Value> sets;
  for (unsigned bits = 0; bits < 64; ++bits) {
    if (std::popcount(bits) > 4) continue;
    std::vector<Value> members;
    for (int i = 0; i < 6; ++i)
      if (bits >> i & 1u) members.push_back(Value::integer(i));
    sets.push_back(Value::set(std::move(members)));
  }
  auto one = Value::integer(1);
  auto expect = [&](bool ok, const std::string& what) {
    ++res.checked;
    if (!ok) res.fail(what);
  };
  expect(aggregate_eval("count", Value::set({})) == Value::integer(0), "count({}) = 0");
  expect(aggregate_eval("sum", Value::set({})) == Value::integer(0), "sum({}) = 0");
  expect(aggregate_eval("max", Value::set({})).is_undef(), "max({}) undefined");
  expect(aggregate_eval("min", Value::set({})).is_undef(), "min({}) undefined");
  for (const auto& s : sets) {
    std::string name = s.to_string();
    for (const auto& y : s.items()) {
      Value rest = set_op_eval("\\", s, Value::set({y}));
      expect(aggregate_eval("count", s) == arith_eval("+", one, aggregate_eval("count", rest)),
             "count(" + name + ") = 1 + count(" + rest.to_string() + ")");
      expect(aggregate_eval("sum", s) == arith_eval("+", aggregate_eval("sum", rest), y),
             "sum(" + name + ") = sum(" + rest.to_string() + ") + " + y.to_string());
    }
    for (const char* agg : {"max", "min"}) {
      bool is_max = agg[1] == 'a';
      // The unique X in S with no Y in S beyond it.
      Value chosen;
      int hits = 0;
      for (const auto& x : s.items()) {
        bool beaten = false;
        for (const auto& y : s.items())
          if (relation_holds(is_max ? ">" : "<", y, x)) beaten = true;
        if (!beaten) {
          chosen = x;
          ++hits;
        }
      }
      Value builtin = aggregate_eval(agg, s);
      expect(s.size() == 0 ? builtin.is_undef() && hits == 0 : hits == 1 && builtin == chosen,
             std::string(agg) + "(" + name + ")");
    }
  }

  // The defining rules themselves, as formulas over every set above.
  Theory defs = parse_program(
      "count({}) := 0.\n"
      "count(S) := 1 + count(S \\ {Y}) :- Y in S.\n"
      "sum({}) := 0.\n"
      "sum(S) := sum(S \\ {Y}) + Y :- Y in S.\n"
      "max(S) := X :- X in S, not exists Y (Y in S, Y > X).\n"
      "min(S) := X :- X in S, not exists Y (Y in S, Y < X).\n");
  EvalContext ctx;
  ctx.theory = &defs;
  ctx.bounds.min_int = 0;
  ctx.bounds.max_int = 15;
  for (int i = 0; i <= 5; ++i) ctx.domain.push_back(Value::integer(i));
  ctx.domain.insert(ctx.domain.end(), sets.begin(), sets.end());
  GroundTheory gt = ground_theory(defs, ctx.domain);
  std::set<Atom> none;
  AtomSetOracle oracle(none, none);
  Assignment sigma;
  Evaluator ev(ctx, oracle, sigma, sigma);
  for (const auto& gi : gt.instances) {
    Env env = gi.env;
    expect(ev.sat(*gi.formula, env, World::There),
           statement_to_string(*materialize(gi)));
  }
  res.seconds = timer.seconds();
  return res;
}

PropertyResult check_conservativity(std::size_t programs, std::uint64_t seed) {
  Timer timer;
  PropertyResult res;
  res.name = "conservativity";
  GeneratorConfig cfg;
  DomainBounds b = generator_bounds(cfg);
  for (std::size_t i = 0; i < programs; ++i) {
    std::string text = generate_plain_program(seed + i, cfg);
    Theory th = parse_program(text);
    auto ours = eq_models(th, b);
    auto ref = sqhtf_stable_models(th, b);
    ++res.checked;
    if (ours != ref)
      res.fail("program:\n" + text + "solver " + models_text(ours) + " reference " +
               models_text(ref));
  }
  res.seconds = timer.seconds();
  return res;
}

PropertyResult check_existential_intro(const std::vector<NamedProgram>& programs,
                                       std::size_t random, std::uint64_t seed) {
  Timer timer;
  PropertyResult res;
  res.name = "existential-introduction";
  std::vector<NamedProgram> all = programs;
  GeneratorConfig cfg;
  for (std::size_t i = 0; i < random; ++i)
    all.push_back({"random#" + std::to_string(seed + i), generate_gz_program(seed + i, cfg),
                   generator_bounds(cfg)});
  for (const auto& prog : all) {
    Theory th = parse_program(prog.text);
    auto base = eq_models(th, prog.bounds);
    auto positions = eligible_positions(th);
    auto compare = [&](const Theory& t2, const std::string& where) {
      auto got = eq_models(t2, prog.bounds);
      ++res.checked;
      if (got != base)
        res.fail(prog.name + " at " + where + ": " + models_text(base) + " became " +
                 models_text(got) + "\n" + theory_to_string(t2));
    };
    for (const auto& pos : positions)
      compare(existential_intro_transform(th, pos), pos.to_string());
    if (!positions.empty()) compare(existential_intro_transform(th, positions), "all positions");
  }
  res.seconds = timer.seconds();
  return res;
}

PropertyResult check_pruning(std::size_t programs, std::uint64_t seed) {
  Timer timer;
  PropertyResult res;
  res.name = "pruning";
  GeneratorConfig cfg;
  cfg.max_predicates = 2;
  cfg.constants = 2;
  cfg.max_int = 1;
  cfg.max_free_atoms = 8;
  DomainBounds b = generator_bounds(cfg);
  for (std::size_t i = 0; i < programs; ++i) {
    std::string text = generate_gz_program(seed + i, cfg);
    Theory th = parse_program(text);
    auto pruned = eq_models(th, b, true);
    auto full = eq_models(th, b, false);
    EvalContext ctx = make_context(th, b);
    GroundTheory gt = ground_theory(th, ctx.domain);
    auto gz_full = gz_stable_models(ctx, gt, {false, false});
    ++res.checked;
    if (pruned != full || gz_full != full)
      res.fail("program:\n" + text + "pruned " + models_text(pruned) + " unpruned " +
               models_text(full) + " reduct unpruned " + models_text(gz_full));
  }
  res.seconds = timer.seconds();
  return res;
}

CrossCheckReport run_cross_check_trials(std::size_t trials, std::uint64_t seed,
                                        const GeneratorConfig& cfg) {
  Timer timer;
  CrossCheckReport rep;
  rep.trials = trials;
  std::vector<std::optional<Disagreement>> outcome(trials);
  DomainBounds b = generator_bounds(cfg);
  auto trial = [&](std::size_t i) {
    std::string text;
    try {
      text = generate_gz_program(seed + i, cfg);
      CrossCheck cc = cross_check(parse_program(text), b, false);
      if (!cc.agree()) outcome[i] = Disagreement{text, cc.gz_models, cc.eq_models, ""};
    } catch (const std::exception& e) {
      outcome[i] = Disagreement{text, {}, {}, e.what()};
    }
  };
#ifdef SETASP_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(trials); ++i)
    trial(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < trials; ++i) trial(i);
#endif
  for (auto& o : outcome) {
    if (o) rep.disagreements.push_back(std::move(*o));
    else ++rep.agreements;
  }
  rep.seconds = timer.seconds();
  return rep;
}

}  // namespace setasp
