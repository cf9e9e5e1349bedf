#include <doctest.h>

#include <random>

#include "setasp/builtins.hpp"
#include "setasp/grounding.hpp"
#include "setasp/interpretation.hpp"
#include "setasp/parser.hpp"

using namespace setasp;

namespace {

Value I(std::int64_t v) { return Value::integer(v); }
Value S(const char* name) { return Value::symbol(name); }
Atom A(const char* p, Value v) { return Atom{p, {std::move(v)}}; }

const char* kSetValue = "r(1). r(2). q(1).\nq(2) :- Z = {X : r(X)}, p(Z).\np(Y) :- Y = {X : q(X)}.";

struct Fixture {
  Theory th;
  EvalContext ctx;
  GroundTheory gt;

  Fixture(const std::string& text, DomainBounds b) : th(parse_program(text)) {
    ctx = make_context(th, b);
    gt = ground_theory(th, ctx.domain);
  }

  Value eval(const std::string& term, const Assignment& sh, const Assignment& st,
             const std::set<Atom>& h, const std::set<Atom>& t, World w) {
    TermPtr tp = parse_term(term, th);
    AtomSetOracle oracle(h, t);
    Evaluator ev(ctx, oracle, sh, st);
    Env env;
    return ev.eval(*tp, env, w);
  }
};

DomainBounds ints(int lo, int hi) {
  DomainBounds b;
  b.min_int = lo;
  b.max_int = hi;
  return b;
}

}  // namespace

TEST_CASE("nested function application uses the value of the inner one") {
  Fixture fx("#function f/1 : {c}.\n#function g/1 : {d}.\nk(a). k(c). k(d).", {});
  Assignment sigma;
  sigma.facts[{"f", {S("a")}}] = S("c");
  sigma.facts[{"g", {S("c")}}] = S("d");
  std::set<Atom> none;
  CHECK(fx.eval("g(f(a))", sigma, sigma, none, none, World::There) == S("d"));
  CHECK(fx.eval("g(c)", sigma, sigma, none, none, World::There) == S("d"));
}

TEST_CASE("undefined arguments propagate") {
  Fixture fx("#function f/1 : {c}.\nk(a). k(b). k(h(c)).", {});
  Assignment sigma;
  sigma.facts[{"f", {S("b")}}] = S("c");
  std::set<Atom> none;
  CHECK(fx.eval("f(a)", sigma, sigma, none, none, World::There).is_undef());
  CHECK(fx.eval("h(f(a))", sigma, sigma, none, none, World::There).is_undef());
  CHECK(fx.eval("h(f(b))", sigma, sigma, none, none, World::There) == Value::symbol("h", {S("c")}));
}

TEST_CASE("an extensional set with an undefined element is undefined") {
  Fixture fx("k(0).", ints(0, 20));
  std::set<Atom> none;
  Assignment sigma;
  CHECK(fx.eval("{0*10/0, 1*10/1, 2*10/2}", sigma, sigma, none, none, World::There).is_undef());
  CHECK(fx.eval("{1*10/1, 2*10/2}", sigma, sigma, none, none, World::There) == Value::set({I(10)}));
}

TEST_CASE("assignment order") {
  Assignment empty, fa_c, fa_c_fb_d, fa_d;
  fa_c.facts[{"f", {S("a")}}] = S("c");
  fa_c_fb_d = fa_c;
  fa_c_fb_d.facts[{"f", {S("b")}}] = S("d");
  fa_d.facts[{"f", {S("a")}}] = S("d");
  CHECK(assignment_leq(empty, fa_c_fb_d));
  CHECK(assignment_leq(fa_c, fa_c_fb_d));
  CHECK_FALSE(assignment_leq(fa_c, fa_d));
  CHECK_FALSE(assignment_leq(fa_c_fb_d, fa_c));
}

TEST_CASE("extension of an intensional set at each world") {
  Fixture fx("#function n/0 : {10}.\nk(0).", ints(0, 10));
  std::set<Atom> t = {A("p", I(0)), A("p", I(1)), A("p", I(2))};
  std::set<Atom> h = {A("p", I(0)), A("p", I(2))};
  Assignment sigma;
  sigma.facts[{"n", {}}] = I(10);
  TermPtr tau2 = parse_term("{X : p(X)}", fx.th);
  TermPtr tau1 = parse_term("{X : X * n / X : p(X)}", fx.th);
  AtomSetOracle oracle(h, t);
  Evaluator ev(fx.ctx, oracle, sigma, sigma);
  Env env;
  CHECK(ev.ext(*tau2, env, World::There) == Value::set({I(0), I(1), I(2)}));
  CHECK(ev.ext(*tau1, env, World::There).is_undef());
  CHECK(ev.ext(*tau2, env, World::Here) == Value::set({I(0), I(2)}));
  // The set value at h is only defined when both extensions agree.
  CHECK(ev.eval(*tau2, env, World::Here).is_undef());
  CHECK(ev.eval(*tau2, env, World::There) == Value::set({I(0), I(1), I(2)}));
}

TEST_CASE("closure of the unique model of the set-valued program") {
  Fixture fx(kSetValue, ints(1, 2));
  std::set<Atom> i1 = {A("q", I(1)), A("p", Value::set({I(1)})), A("r", I(1)), A("r", I(2))};
  HTInterpretation c = coherence_closure(fx.ctx, HTInterpretation::total({}, i1), fx.gt);
  CHECK(c.sigma_t.derived.at("{X:r(X)}") == Value::set({I(1), I(2)}));
  CHECK(c.sigma_t.derived.at("{X:q(X)}") == Value::set({I(1)}));
  CHECK(c.is_total());
  CHECK(is_coherent(fx.ctx, c, fx.gt));
}

TEST_CASE("the smaller interpretation below the rejected candidate") {
  Fixture fx(kSetValue, ints(1, 2));
  Value s12 = Value::set({I(1), I(2)});
  std::set<Atom> i2 = {A("q", I(1)), A("q", I(2)), A("p", s12), A("r", I(1)), A("r", I(2))};
  std::set<Atom> h = i2;
  h.erase(A("q", I(2)));
  h.erase(A("p", s12));
  HTInterpretation total = coherence_closure(fx.ctx, HTInterpretation::total({}, i2), fx.gt);
  HTInterpretation smaller = total;
  smaller.atoms_h = h;
  smaller = coherence_closure(fx.ctx, smaller, fx.gt);
  CHECK(smaller.sigma_h.derived.count("{X:q(X)}") == 0);
  CHECK(smaller.sigma_t.derived.at("{X:q(X)}") == s12);
  CHECK(smaller.sigma_h.derived.at("{X:r(X)}") == s12);
  CHECK(interp_leq(smaller, total));
  CHECK(smaller != total);
  CHECK(interp_leq(total, total));
  HTInterpretation other_t = HTInterpretation::total({}, h);
  CHECK_FALSE(interp_leq(other_t, total));
  CHECK_FALSE(interp_leq(total, other_t));
}

TEST_CASE("closure of a total interpretation with one atom") {
  Fixture fx("p(a) :- count{X : p(X)} >= 1.\np(b).", {});
  HTInterpretation c = coherence_closure(fx.ctx, HTInterpretation::total({}, {A("p", S("b"))}), fx.gt);
  CHECK(c.sigma_t.derived.at("{X:p(X)}") == Value::set({S("b")}));
  CHECK(c.sigma_t.derived.at("count{X:p(X)}") == I(1));
}

TEST_CASE("aggregates") {
  CHECK(aggregate_eval("sum", Value::set({I(2), I(3)})) == I(5));
  CHECK(aggregate_eval("max", Value::set({})).is_undef());
  CHECK(aggregate_eval("min", Value::set({})).is_undef());
  CHECK(aggregate_eval("count", Value::set({})) == I(0));
  CHECK(aggregate_eval("max", Value::set({I(2), I(7), I(3)})) == I(7));
  CHECK(aggregate_eval("min", Value::set({I(2), I(7), I(3)})) == I(2));
  CHECK(aggregate_eval("sum", Value::set({Value::tuple({I(2), S("a")}), Value::tuple({I(2), S("b")})})) == I(4));
  CHECK(aggregate_eval("sum", Value::set({S("a")})).is_undef());
  CHECK(aggregate_eval("count", I(3)).is_undef());
}

TEST_CASE("arithmetic, set operations and relations") {
  CHECK(arith_eval("/", I(3), I(0)).is_undef());
  CHECK(arith_eval("/", I(6), I(3)) == I(2));
  CHECK(arith_eval("+", S("a"), I(1)).is_undef());
  Value s23 = Value::set({I(2), I(3)});
  CHECK(set_op_eval("\\", s23, Value::set({I(3)})) == Value::set({I(2)}));
  CHECK(set_op_eval("|", s23, Value::set({I(4)})) == Value::set({I(2), I(3), I(4)}));
  CHECK(set_op_eval("&", s23, Value::set({I(3)})) == Value::set({I(3)}));
  CHECK(set_op_eval("|", s23, I(1)).is_undef());
  CHECK(relation_holds("in", I(2), s23));
  CHECK_FALSE(relation_holds("in", I(4), s23));
  CHECK(relation_holds("<=", I(2), I(2)));
  CHECK_FALSE(relation_holds("<", S("a"), S("b")));
  CHECK(relation_holds("!=", S("a"), S("b")));
}

TEST_CASE("closure is idempotent and undefined values never leak into sets") {
  Fixture fx(kSetValue, ints(1, 2));
  std::vector<Atom> atoms;
  for (const char* p : {"p", "q", "r"})
    for (const auto& v : fx.ctx.domain) atoms.push_back(A(p, v));
  std::mt19937_64 rng(5);
  for (int n = 0; n < 300; ++n) {
    HTInterpretation i;
    for (const auto& a : atoms) {
      if (rng() % 2) continue;
      i.atoms_t.insert(a);
      if (rng() % 2) i.atoms_h.insert(a);
    }
    HTInterpretation once = coherence_closure(fx.ctx, i, fx.gt);
    CHECK(coherence_closure(fx.ctx, once, fx.gt) == once);
    CHECK(once.well_formed());
    for (const auto& [k, v] : once.sigma_t.derived) CHECK_FALSE(v.is_undef());
  }
}

TEST_CASE("closure is monotone in h for positive set conditions") {
  Fixture fx("q(Y) :- Y = {X : p(X)}.\nr :- count{X : p(X), s(X)} >= 1.", ints(0, 2));
  std::vector<Atom> atoms;
  for (const char* p : {"p", "s"})
    for (int v = 0; v <= 2; ++v) atoms.push_back(A(p, I(v)));
  std::mt19937_64 rng(11);
  for (int n = 0; n < 500; ++n) {
    HTInterpretation big;
    for (const auto& a : atoms) {
      if (rng() % 2) continue;
      big.atoms_t.insert(a);
      if (rng() % 3) big.atoms_h.insert(a);
    }
    HTInterpretation small = big;
    for (const auto& a : big.atoms_h)
      if (rng() % 2) small.atoms_h.erase(a);
    CHECK(interp_leq(coherence_closure(fx.ctx, small, fx.gt), coherence_closure(fx.ctx, big, fx.gt)));
  }
}

TEST_CASE("closure is not monotone when a set condition is an implication") {
  // {X : p(X) -> q(X)} with T = {p(1), q(1)}: H = {} keeps the t-extension,
  // H = {p(1)} drops 1 from it, so the smaller interpretation has the larger sigma.
  Fixture fx("k(1).\nr(Y) :- Y = {X : p(X) -> q(X)}.", ints(1, 1));
  std::set<Atom> t = {A("p", I(1)), A("q", I(1))};
  HTInterpretation small, big;
  small.atoms_t = big.atoms_t = t;
  big.atoms_h = {A("p", I(1))};
  CHECK(interp_leq(small, big));
  HTInterpretation cs = coherence_closure(fx.ctx, small, fx.gt);
  HTInterpretation cb = coherence_closure(fx.ctx, big, fx.gt);
  CHECK(cs.sigma_h.derived.at("{X:p(X) -> q(X)}") == cs.sigma_t.derived.at("{X:p(X) -> q(X)}"));
  CHECK(cb.sigma_h.derived.count("{X:p(X) -> q(X)}") == 0);
  CHECK_FALSE(interp_leq(cs, cb));
}
