#include <doctest.h>

#include <algorithm>
#include <functional>

#include "setasp/domain.hpp"
#include "setasp/errors.hpp"
#include "setasp/parser.hpp"

using namespace setasp;

namespace {

bool contains(const std::vector<Value>& d, const Value& v) {
  return std::find(d.begin(), d.end(), v) != d.end();
}

bool has_undef(const Value& v) {
  if (v.is_undef()) return true;
  for (const auto& x : v.items())
    if (has_undef(x)) return true;
  return false;
}

// Integers lo..hi plus every subset of them with at most `card` members.
std::vector<Value> ints_and_subsets(int lo, int hi, int card) {
  std::vector<Value> out;
  std::vector<Value> ints;
  for (int i = lo; i <= hi; ++i) ints.push_back(Value::integer(i));
  out = ints;
  std::vector<Value> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (card < 0) return;
    out.push_back(Value::set(pick));
    if (static_cast<int>(pick.size()) == card) return;
    for (std::size_t i = from; i < ints.size(); ++i) {
      pick.push_back(ints[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Value> sorted(std::vector<Value> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Signature only_c() {
  Signature sig;
  sig.constructors.insert({"c", 0});
  return sig;
}

}  // namespace

TEST_CASE("level 0 over a single constant") {
  DomainBounds b;
  b.max_herbrand_depth = 0;
  CHECK(build_domain_level(only_c(), b, 0) == std::vector<Value>{Value::symbol("c")});
}

TEST_CASE("level 1 adds sets of tuples") {
  DomainBounds b;
  b.max_herbrand_depth = 0;
  b.max_tuple_arity = 3;
  b.max_set_card = 2;
  auto d1 = build_domain_level(only_c(), b, 1);
  Value c = Value::symbol("c");
  CHECK(contains(d1, Value::set({})));
  CHECK(contains(d1, Value::set({c})));
  CHECK(contains(d1, Value::set({Value::tuple({c, c})})));
  CHECK(contains(d1, Value::set({Value::tuple({c, c, c})})));
  CHECK(d1.size() == 5);
}

TEST_CASE("level 2 has nested sets") {
  DomainBounds b;
  b.max_herbrand_depth = 0;
  b.max_tuple_arity = 3;
  b.max_set_card = 2;
  auto d2 = build_domain_level(only_c(), b, 2);
  Value c = Value::symbol("c");
  Value sc = Value::set({c});
  Value scc = Value::set({Value::tuple({c, c})});
  CHECK(contains(d2, Value::set({sc})));
  CHECK(contains(d2, Value::set({sc, scc})));
}

TEST_CASE("levels are cumulative and free of undefined values") {
  Signature sig = only_c();
  sig.constructors.insert({"g", 1});
  DomainBounds b;
  b.max_herbrand_depth = 1;
  b.max_int = 1;
  b.max_set_rank = 2;
  b.max_set_card = 2;
  b.max_tuple_arity = 1;
  auto d0 = build_domain_level(sig, b, 0, true);
  auto d1 = build_domain_level(sig, b, 1, true);
  auto d2 = build_domain_level(sig, b, 2, true);
  for (const auto& v : d0) CHECK(contains(d1, v));
  for (const auto& v : d1) CHECK(contains(d2, v));
  for (const auto& v : d2) {
    CHECK_FALSE(has_undef(v));
    CHECK(b.admits(v));
  }
  CHECK(contains(d0, Value::symbol("g", {Value::symbol("c")})));
}

TEST_CASE("level size is capped") {
  DomainBounds b;
  b.max_set_card = 4;
  b.max_int = 40;
  b.hard_cap = 1000;
  CHECK_THROWS_AS(build_domain_level(only_c(), b, 1, true), BoundsError);
}

TEST_CASE("sets are canonical") {
  Value a = Value::symbol("a"), b = Value::symbol("b");
  CHECK(Value::set({a, b, a}) == Value::set({b, a}));
  CHECK(Value::set({Value::integer(3), Value::integer(2)}).to_string() == "{2,3}");
  CHECK(Value::tuple({a}) == a);
  CHECK_THROWS_AS(Value::set({a, Value::tuple({a, b})}), std::invalid_argument);
}

TEST_CASE("active domain of the sum program") {
  DomainBounds b;
  b.max_int = 5;
  Theory builtin = parse_program("p(2). p(3).\nq(Y) :- sum{X : p(X)} = Y.");
  // No set-valued variable: quantifiers only need the integers.
  CHECK(sorted(build_active_domain(builtin, b)) == ints_and_subsets(0, 5, -1));
  Theory recursive = parse_program(
      "p(2). p(3).\nsum({}) := 0.\nsum(S) := sum(S \\ {Y}) + Y :- Y in S.\n"
      "q(Y) :- sum{X : p(X)} = Y.");
  CHECK(sorted(build_active_domain(recursive, b)) == ints_and_subsets(0, 5, b.max_set_card));
}

TEST_CASE("active domain without sets or integers") {
  DomainBounds b;
  b.max_set_rank = 0;
  CHECK(sorted(build_active_domain(parse_program("p(a). q(b) :- p(a)."), b)) ==
        std::vector<Value>{Value::symbol("a"), Value::symbol("b")});
}

TEST_CASE("active domain of the set-valued program") {
  DomainBounds b;
  b.min_int = 1;
  b.max_int = 2;
  Theory th = parse_program(
      "r(1). r(2). q(1).\nq(2) :- Z = {X : r(X)}, p(Z).\np(Y) :- Y = {X : q(X)}.");
  CHECK(sorted(build_active_domain(th, b)) == ints_and_subsets(1, 2, 2));
}

TEST_CASE("literals outside the bounds are rejected") {
  DomainBounds b;
  b.max_int = 3;
  CHECK_THROWS_AS(build_active_domain(parse_program("p(7)."), b), InputError);
}
