#include <doctest.h>

#include <fstream>
#include <sstream>

#include "setasp/errors.hpp"
#include "setasp/generator.hpp"
#include "setasp/parser.hpp"
#include "setasp/printer.hpp"

using namespace setasp;

namespace {

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Every sub-term and sub-formula, for structural invariants.
void walk(const Formula& f, std::vector<const Term*>& terms, std::vector<const Formula*>& forms);

void walk(const Term& t, std::vector<const Term*>& terms, std::vector<const Formula*>& forms) {
  terms.push_back(&t);
  for (const auto& a : t.args) walk(*a, terms, forms);
  if (t.body) walk(*t.body, terms, forms);
}

void walk(const Formula& f, std::vector<const Term*>& terms, std::vector<const Formula*>& forms) {
  forms.push_back(&f);
  for (const auto& a : f.args) walk(*a, terms, forms);
  if (f.lhs) walk(*f.lhs, terms, forms);
  if (f.rhs) walk(*f.rhs, terms, forms);
}

bool mentions(const Term& t, const std::string& v);

bool mentions(const Formula& f, const std::string& v) {
  for (const auto& a : f.args)
    if (mentions(*a, v)) return true;
  return (f.lhs && mentions(*f.lhs, v)) || (f.rhs && mentions(*f.rhs, v));
}

bool mentions(const Term& t, const std::string& v) {
  if (t.kind == TermKind::Var && t.name == v) return true;
  for (const auto& a : t.args)
    if (mentions(*a, v)) return true;
  return t.body && mentions(*t.body, v);
}

const std::vector<std::string> kSamples = {
    "p(b).",
    "p(a) :- count{X : p(X)} >= 1.\np(b).",
    "r(1). r(2). q(1).\nq(2) :- Z = {X : r(X)}, p(Z).\np(Y) :- Y = {X : q(X)}.",
    "count({}) := 0.\ncount(S) := 1 + count(S \\ {Y}) :- Y in S.",
    "#function f/1 : {a; b}.\nr(f(a)) :- not s(b); t.\n:- r(a), r(b).",
    "p(a) :- count{X : p(X), X != a} >= 1.",
    "q :- exists X (p(X), not r(X)).",
    "s({X, Y : e(X, Y)}) :- t(g(a, 1)), 3 * 2 - 1 = 5.",
    "m(Z) :- Z = max{B : count{I : word(B, I, poirot)} : author(agatha, B)}.",
};

}  // namespace

TEST_CASE("a fact parses to one atom") {
  Theory th = parse_program("p(b).");
  REQUIRE(th.formulas.size() == 1);
  const Formula& f = *th.formulas[0];
  CHECK(f.kind == FormulaKind::Pred);
  CHECK(f.name == "p");
  REQUIRE(f.args.size() == 1);
  CHECK(f.args[0]->kind == TermKind::Const);
  CHECK(f.args[0]->value == Value::symbol("b"));
}

TEST_CASE("a count rule nests the intensional set inside the aggregate") {
  Theory th = parse_program("p(a) :- count{X : p(X)} >= 1.");
  const Formula& rule = *th.formulas[0];
  REQUIRE(rule.kind == FormulaKind::Implies);
  CHECK(to_string(*rule.rhs) == "p(a)");
  const Formula& body = *rule.lhs;
  REQUIRE(body.kind == FormulaKind::Pred);
  CHECK(body.builtin);
  CHECK(body.name == ">=");
  const Term& agg = *body.args[0];
  CHECK(agg.kind == TermKind::Eval);
  CHECK(agg.aggregate);
  CHECK(agg.name == "count");
  const Term& set = *agg.args[0];
  REQUIRE(set.kind == TermKind::IntSet);
  CHECK(set.bound == std::vector<std::string>{"X"});
  REQUIRE(set.args.size() == 1);
  CHECK(set.args[0]->kind == TermKind::Var);
  CHECK(to_string(*set.body) == "p(X)");
}

TEST_CASE("rule variables are closed outside the set, set binders stay inside") {
  Theory th = parse_program("q(Y) :- Y = {X : q(X)}.");
  const Formula& f = *th.formulas[0];
  REQUIRE(f.kind == FormulaKind::Forall);
  CHECK(f.name == "Y");
  CHECK(f.free.empty());
  CHECK(to_string(f) == "forall Y (Y = {X:q(X)} -> q(Y))");
}

TEST_CASE("rank") {
  Theory ctx;
  CHECK(rank(*parse_formula("p(b)", ctx)) == 0);
  CHECK(rank(*parse_term("{X : p(X)}", ctx)) == 1);
  // The head tuple may have the set's own rank; only the condition must be lower.
  CHECK(rank(*parse_term("max{B : count{I : word(B, I, Y)} : author(X, B)}", ctx)) == 1);
  CHECK(rank(*parse_term("{S : S = {X : p(X)}}", ctx)) == 2);
  CHECK(rank(*parse_formula("p({X : p(X)}) -> q", ctx)) == 1);
}

TEST_CASE("free variables") {
  Theory ctx;
  CHECK(free_vars(*parse_term("count{I : word(B, I, poirot)}", ctx)) == std::vector<std::string>{"B"});
  CHECK(sorted(free_vars(*parse_term("{B : count{I : word(B, I, Y)} : author(X, B)}", ctx))) ==
        std::vector<std::string>{"X", "Y"});
  CHECK(free_vars(*parse_formula("p(X)", ctx)) == std::vector<std::string>{"X"});
  CHECK(free_vars(*parse_formula("exists X (p(X, Y))", ctx)) == std::vector<std::string>{"Y"});
}

TEST_CASE("function definitions expand to guarded equalities") {
  Theory th = parse_program("count({}) := 0.");
  CHECK(to_string(*th.formulas[0]) == "0 = 0 -> count({}) = 0");
  th = parse_program("sum(S) := sum(S \\ {Y}) + Y :- Y in S.");
  const Formula& f = *th.formulas[0];
  CHECK(sorted(std::vector<std::string>{f.name, f.lhs->name}) == std::vector<std::string>{"S", "Y"});
  const Formula& rule = *f.lhs->lhs;
  CHECK(to_string(rule) ==
        "Y in S, sum(S \\ {Y}) + Y = sum(S \\ {Y}) + Y -> sum(S) = sum(S \\ {Y}) + Y");
  th = parse_program("p(b).");
  CHECK(to_string(*th.formulas[0]) == "p(b)");
}

TEST_CASE("printing round-trips") {
  for (const auto& text : kSamples) {
    CAPTURE(text);
    std::string once = theory_to_string(parse_program(text));
    CHECK(theory_to_string(parse_program(once)) == once);
  }
  GeneratorConfig cfg;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (const auto& text : {generate_gz_program(seed, cfg), generate_plain_program(seed, cfg)}) {
      CAPTURE(text);
      std::string once = theory_to_string(parse_program(text));
      CHECK(theory_to_string(parse_program(once)) == once);
    }
  }
}

TEST_CASE("rank is monotone and set bodies are strictly lower") {
  for (const auto& text : kSamples) {
    Theory th = parse_program(text);
    for (const auto& f : th.formulas) {
      std::vector<const Term*> terms;
      std::vector<const Formula*> forms;
      walk(*f, terms, forms);
      for (const Formula* g : forms) {
        CHECK(g->rank <= f->rank);
        if (g->lhs) CHECK(g->lhs->rank <= g->rank);
        if (g->rhs) CHECK(g->rhs->rank <= g->rank);
        for (const auto& a : g->args) CHECK(a->rank <= g->rank);
      }
      for (const Term* t : terms) {
        for (const auto& a : t->args) CHECK(a->rank <= t->rank);
        if (t->kind == TermKind::IntSet) CHECK(t->body->rank < t->rank);
      }
    }
  }
}

TEST_CASE("every bound set variable is used and theory formulas are closed") {
  for (const auto& text : kSamples) {
    Theory th = parse_program(text);
    for (const auto& f : th.formulas) {
      CHECK(f->free.empty());
      std::vector<const Term*> terms;
      std::vector<const Formula*> forms;
      walk(*f, terms, forms);
      for (const Term* t : terms) {
        if (t->kind != TermKind::IntSet) continue;
        for (const auto& v : t->bound) {
          bool used = mentions(*t->body, v);
          for (const auto& h : t->args) used = used || mentions(*h, v);
          CHECK(used);
        }
      }
    }
  }
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_program("p(a :- q.");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse_program("p({X : q(X)."), ParseError);
  CHECK_THROWS_AS(parse_program("p(X) :- q(X"), ParseError);
}
