#include "setasp/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "setasp/errors.hpp"
#include "setasp/gz.hpp"
#include "setasp/parser.hpp"
#include "setasp/printer.hpp"
#include "setasp/props.hpp"
#include "setasp/simplify.hpp"
#include "setasp/solver.hpp"
#include "setasp/transform.hpp"

namespace setasp {

namespace {

using nlohmann::json;
using Models = std::vector<std::vector<Atom>>;

json to_json(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Undef: return nullptr;
    case Value::Kind::Int: return v.as_int();
    case Value::Kind::Symbol: {
      if (v.size() == 0) return v.name();
      json args = json::array();
      for (const auto& a : v.items()) args.push_back(to_json(a));
      return {{"fn", v.name()}, {"args", args}};
    }
    case Value::Kind::Tuple: {
      json out = json::array();
      for (const auto& a : v.items()) out.push_back(to_json(a));
      return out;
    }
    case Value::Kind::Set: {
      json members = json::array();
      for (const auto& a : v.items()) members.push_back(to_json(a));
      return {{"set", members}};
    }
  }
  return nullptr;
}

json to_json(const Atom& a) {
  json args = json::array();
  for (const auto& v : a.args) args.push_back(to_json(v));
  return {{"pred", a.pred}, {"args", args}};
}

json to_json(const std::vector<Atom>& atoms) {
  json out = json::array();
  for (const auto& a : atoms) out.push_back(to_json(a));
  return out;
}

json to_json(const Models& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(to_json(m));
  return out;
}

json to_json(const Assignment& sigma) {
  json facts = json::array();
  for (const auto& [k, v] : sigma.facts) {
    json args = json::array();
    for (const auto& a : k.args) args.push_back(to_json(a));
    facts.push_back({{"fn", k.name}, {"args", args}, {"value", to_json(v)}});
  }
  json sets = json::object();
  for (const auto& [k, v] : sigma.derived) sets[k] = to_json(v);
  return {{"functions", facts}, {"sets", sets}};
}

std::string atoms_text(const std::vector<Atom>& atoms) {
  std::string out = "{";
  for (std::size_t i = 0; i < atoms.size(); ++i) out += (i ? ", " : "") + atoms[i].to_string();
  return out + "}";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  DomainBounds bounds;
  std::string file;
  std::string mode = "equilibrium";
  std::string reduct_for;
  std::vector<std::string> selectors;
  bool show_sigma = false;
  bool json = false;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
};

void add_bounds(CLI::App* cmd, Options& o) {
  cmd->add_option("--max-int", o.bounds.max_int, "Largest integer in the domain");
  cmd->add_option("--min-int", o.bounds.min_int, "Smallest integer in the domain");
  cmd->add_option("--max-depth", o.bounds.max_herbrand_depth, "Herbrand term nesting limit");
  cmd->add_option("--max-set-rank", o.bounds.max_set_rank, "Set nesting level");
  cmd->add_option("--max-set-card", o.bounds.max_set_card, "Largest set cardinality");
  cmd->add_option("--max-arity", o.bounds.max_tuple_arity, "Largest tuple arity");
  cmd->add_flag("--full-domain", o.bounds.full_domain,
                "Quantify over the whole bounded universe instead of the active domain");
  cmd->add_flag("--json", o.json, "Machine-readable output");
}

Theory load(const Options& o) {
  if (o.file.empty()) throw InputError("no input program given");
  return parse_program(read_file(o.file));
}

void require_gz(const Theory& th) {
  GzCheck check = is_gz_theory(th);
  if (!check.ok) throw InputError("not a GZ program: " + check.diagnostic);
}

void print_sigma(std::ostream& out, const Assignment& sigma) {
  for (const auto& [k, v] : sigma.facts) out << "  σ(" << k.to_string() << ") = " << v.to_string() << "\n";
  for (const auto& [k, v] : sigma.derived) out << "  σ(" << k << ") = " << v.to_string() << "\n";
}

int cmd_solve(const Options& o, std::ostream& out) {
  Theory th = load(o);
  bool eq = o.mode != "gz";
  bool gz = o.mode != "equilibrium";
  if (gz) require_gz(th);
  EvalContext ctx = make_context(th, o.bounds);
  GroundTheory gt = ground_theory(th, ctx.domain);
  StableModelReport eq_report;
  Models eq_models, gz_models;
  if (eq) {
    eq_report = find_stable_models(ctx, gt);
    for (const auto& m : eq_report.models) eq_models.push_back(m.atoms);
  }
  if (gz) gz_models = gz_stable_models(ctx, gt);
  bool agree = !(eq && gz) || eq_models == gz_models;

  if (o.json) {
    json doc = {{"mode", o.mode}};
    if (eq) {
      json ms = json::array();
      for (const auto& m : eq_report.models) {
        json entry = {{"atoms", to_json(m.atoms)}};
        if (o.show_sigma) entry["sigma"] = to_json(m.sigma);
        ms.push_back(entry);
      }
      doc["equilibrium"] = ms;
    }
    if (gz) doc["gz"] = to_json(gz_models);
    if (eq && gz) doc["agree"] = agree;
    out << doc.dump(2) << "\n";
    return agree ? 0 : 1;
  }

  if (eq) {
    if (gz) out << "equilibrium:\n";
    for (std::size_t i = 0; i < eq_report.models.size(); ++i) {
      out << "Answer " << i + 1 << ": " << atoms_text(eq_report.models[i].atoms) << "\n";
      if (o.show_sigma) print_sigma(out, eq_report.models[i].sigma);
    }
    out << "Models: " << eq_models.size() << "\n";
  }
  if (gz) {
    if (eq) out << "gz:\n";
    for (std::size_t i = 0; i < gz_models.size(); ++i)
      out << "Answer " << i + 1 << ": " << atoms_text(gz_models[i]) << "\n";
    out << "Models: " << gz_models.size() << "\n";
  }
  if (eq && gz) out << (agree ? "AGREE" : "DISAGREE") << "\n";
  return agree ? 0 : 1;
}

// "p(a), p(b)" as a set of ground atoms; the empty string is the empty set.
std::set<Atom> parse_atom_set(const std::string& text, const Theory& th, const EvalContext& ctx) {
  std::set<Atom> atoms;
  if (text.find_first_not_of(" \t") == std::string::npos) return atoms;
  FormulaPtr f = parse_formula(text, th);
  std::vector<const Formula*> todo{f.get()};
  while (!todo.empty()) {
    const Formula* g = todo.back();
    todo.pop_back();
    if (g->kind == FormulaKind::And) {
      todo.push_back(g->rhs.get());
      todo.push_back(g->lhs.get());
      continue;
    }
    if (g->kind != FormulaKind::Pred || g->builtin)
      throw InputError("expected a comma-separated list of ground atoms: " + text);
    Atom a{g->name, {}};
    for (const auto& t : g->args) {
      std::optional<Value> v = is_static(*t) ? static_value(*t, ctx) : std::nullopt;
      if (!v || v->is_undef()) throw InputError("atom argument is not a ground value: " + to_string(*t));
      a.args.push_back(*v);
    }
    atoms.insert(std::move(a));
  }
  return atoms;
}

int cmd_ground(const Options& o, std::ostream& out) {
  Theory th = load(o);
  EvalContext ctx = make_context(th, o.bounds);
  GroundTheory gt = ground_theory(th, ctx.domain);
  if (o.reduct_for.empty()) {
    if (o.json) {
      json lines = json::array();
      for (const auto& gi : gt.instances) lines.push_back(statement_to_string(*materialize(gi)));
      out << json{{"instances", lines}}.dump(2) << "\n";
    } else {
      for (const auto& gi : gt.instances) out << statement_to_string(*materialize(gi)) << "\n";
    }
    return 0;
  }
  require_gz(th);
  std::set<Atom> T = parse_atom_set(o.reduct_for == "{}" ? "" : o.reduct_for, th, ctx);
  std::vector<std::string> lines;
  for (const auto& f : theory_reduct(ctx, gt, T)) lines.push_back(statement_to_string(*f));
  if (o.json) {
    out << json{{"interpretation", to_json(std::vector<Atom>(T.begin(), T.end()))}, {"reduct", lines}}.dump(2)
        << "\n";
  } else {
    for (const auto& l : lines) out << l << "\n";
  }
  return 0;
}

json disagreement_json(const Disagreement& d) {
  json j = {{"program", d.program}, {"gzModels", to_json(d.gz_models)}, {"eqModels", to_json(d.eq_models)}};
  if (!d.error.empty()) j["error"] = d.error;
  return j;
}

int cmd_cross_check(const Options& o, std::ostream& out) {
  CrossCheckReport rep;
  if (!o.file.empty()) {
    Theory th = load(o);
    require_gz(th);
    CrossCheck cc = cross_check(th, o.bounds);
    rep.trials = 1;
    if (cc.agree()) rep.agreements = 1;
    else rep.disagreements.push_back({theory_to_string(th), cc.gz_models, cc.eq_models, ""});
  } else {
    rep = run_cross_check_trials(o.trials, o.seed);
  }
  json ds = json::array();
  for (const auto& d : rep.disagreements) ds.push_back(disagreement_json(d));
  json doc = {{"trials", rep.trials}, {"agreements", rep.agreements}, {"disagreements", ds}};
  if (o.json) {
    out << doc.dump(2) << "\n";
  } else {
    out << "trials: " << rep.trials << "\nagreements: " << rep.agreements << "\n";
    for (const auto& d : rep.disagreements) {
      out << "DISAGREE\n" << d.program;
      if (!d.error.empty()) out << "error: " << d.error << "\n";
      out << "gz:";
      for (const auto& m : d.gz_models) out << " " << atoms_text(m);
      out << "\nequilibrium:";
      for (const auto& m : d.eq_models) out << " " << atoms_text(m);
      out << "\n";
    }
  }
  return rep.disagreements.empty() ? 0 : 1;
}

int cmd_transform(const Options& o, std::ostream& out) {
  Theory th = load(o);
  std::vector<AtomSelector> sel;
  for (const auto& s : o.selectors) sel.push_back(parse_selector(s));
  if (sel.empty()) sel = eligible_positions(th);
  Theory result = existential_intro_transform(th, sel);
  if (o.json) {
    json names = json::array();
    for (const auto& s : sel) names.push_back(s.to_string());
    out << json{{"selectors", names}, {"program", theory_to_string(result)}}.dump(2) << "\n";
  } else {
    out << theory_to_string(result);
  }
  return 0;
}

int cmd_check_props(const Options& o, std::ostream& out) {
  std::vector<PropertyResult> results;
  std::vector<NamedProgram> named = {
      {"count_one", "p(a) :- count{X : p(X)} >= 1.\np(b).\n", o.bounds},
      {"count_neq", "p(a) :- count{X : p(X), X != a} >= 1.\np(b).\n", o.bounds},
  };
  results.push_back(check_persistence_negation(1000, o.seed));
  results.push_back(check_definitional_consistency());
  results.push_back(check_conservativity(50, o.seed));
  results.push_back(check_existential_intro(named, 50, o.seed));
  results.push_back(check_pruning(50, o.seed));
  CrossCheckReport cc = run_cross_check_trials(o.trials, o.seed);
  PropertyResult diff;
  diff.name = "cross-check";
  diff.checked = cc.trials;
  for (const auto& d : cc.disagreements) diff.fail(d.error.empty() ? d.program : d.program + d.error);
  results.push_back(diff);

  bool ok = true;
  json doc = json::array();
  for (const auto& r : results) {
    ok = ok && r.ok();
    doc.push_back({{"name", r.name}, {"checked", r.checked}, {"violations", r.violations}, {"failures", r.failures}});
    if (!o.json) {
      out << r.name << ": " << r.checked << " checked, " << r.violations << " violations\n";
      for (const auto& f : r.failures) out << "  " << f << "\n";
    }
  }
  if (o.json) out << doc.dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stable models of logic programs with intensional sets and aggregates"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "Print the stable models of a program");
  solve->add_option("file", o.file, "Program file")->required();
  solve->add_option("--mode", o.mode, "equilibrium, gz or both")
      ->check(CLI::IsMember({"equilibrium", "gz", "both"}));
  solve->add_flag("--show-sigma", o.show_sigma, "Print the witness assignment of each model");
  add_bounds(solve, o);

  auto* ground = app.add_subcommand("ground", "Print the ground instances of a program");
  ground->add_option("file", o.file, "Program file")->required();
  ground->add_option("--reduct-for", o.reduct_for,
                     "Print the reduct with respect to these atoms instead, e.g. \"p(a), p(b)\"");
  add_bounds(ground, o);

  auto* cross = app.add_subcommand("cross-check", "Compare the two semantics");
  cross->add_option("file", o.file, "Program file; random programs when omitted");
  cross->add_option("--trials", o.trials, "Number of random programs");
  cross->add_option("--seed", o.seed, "Seed of the first random program");
  add_bounds(cross, o);

  auto* transform = app.add_subcommand("transform", "Introduce existentials at atom argument positions");
  transform->add_option("file", o.file, "Program file")->required();
  transform->add_option("--select", o.selectors, "FORMULA:ATOM:ARG, all positions when omitted");
  add_bounds(transform, o);

  auto* props = app.add_subcommand("check-props", "Run the property suites on generated instances");
  props->add_option("--trials", o.trials, "Cross-check trials");
  props->add_option("--seed", o.seed, "Base seed");
  add_bounds(props, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*solve) return cmd_solve(o, out);
    if (*ground) return cmd_ground(o, out);
    if (*cross) return cmd_cross_check(o, out);
    if (*transform) return cmd_transform(o, out);
    return cmd_check_props(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace setasp
