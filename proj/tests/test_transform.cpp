#include <doctest.h>

#include "setasp/errors.hpp"
#include "setasp/parser.hpp"
#include "setasp/printer.hpp"
#include "setasp/solver.hpp"
#include "setasp/transform.hpp"

using namespace setasp;

namespace {

const char* kCountOne = "p(a) :- count{X : p(X)} >= 1.\np(b).";

std::vector<std::vector<Atom>> stable(const Theory& th) {
  std::vector<std::vector<Atom>> out;
  for (const auto& m : find_stable_models(th, {}).models) out.push_back(m.atoms);
  return out;
}

}  // namespace

TEST_CASE("selectors") {
  AtomSelector s = parse_selector("1:2:0");
  CHECK(s.formula == 1);
  CHECK(s.atom == 2);
  CHECK(s.arg == 0);
  CHECK(s.to_string() == "1:2:0");
  CHECK_THROWS_AS(parse_selector("1:2"), InputError);
  CHECK_THROWS_AS(parse_selector("a:b:c"), InputError);
  CHECK_THROWS_AS(parse_selector("1:2:3:4"), InputError);
}

TEST_CASE("positions of the count program") {
  Theory th = parse_program(kCountOne);
  auto pos = eligible_positions(th);
  // rule: head p(a), count >= 1 (two args), p(X) in the set; fact p(b)
  std::vector<AtomSelector> want = {{0, 0, 0}, {0, 1, 0}, {0, 1, 1}, {0, 2, 0}, {1, 0, 0}};
  CHECK(pos == want);
}

TEST_CASE("naming the aggregate value") {
  Theory th = parse_program(kCountOne);
  Theory t = existential_intro_transform(th, AtomSelector{0, 1, 0});
  CHECK(theory_to_string(t) == "p(a) :- exists V1 (V1 = count{X:p(X)}, V1 >= 1).\np(b).\n");
  CHECK(stable(t) == stable(th));
}

TEST_CASE("naming a fact argument") {
  Theory th = parse_program(kCountOne);
  Theory t = existential_intro_transform(th, AtomSelector{1, 0, 0});
  CHECK(theory_to_string(t) == "p(a) :- count{X:p(X)} >= 1.\nexists V1 (V1 = b, p(V1)).\n");
  CHECK(stable(t) == stable(th));
}

TEST_CASE("all positions at once") {
  for (const char* text : {kCountOne, "p(a) :- count{X : p(X), X != a} >= 1.\np(b).", "r(1). r(2).\nq(Y) :- Y = {X : r(X)}."}) {
    Theory th = parse_program(text);
    DomainBounds b;
    b.min_int = 1;
    b.max_int = 2;
    Theory t = existential_intro_transform(th, eligible_positions(th));
    auto want = find_stable_models(th, b).models;
    auto got = find_stable_models(t, b).models;
    REQUIRE(want.size() == got.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(want[i].atoms == got[i].atoms);
  }
}

TEST_CASE("bad selectors are rejected") {
  Theory th = parse_program(kCountOne);
  CHECK_THROWS_AS(existential_intro_transform(th, AtomSelector{2, 0, 0}), InputError);
  CHECK_THROWS_AS(existential_intro_transform(th, AtomSelector{0, 9, 0}), InputError);
  CHECK_THROWS_AS(existential_intro_transform(th, AtomSelector{0, 0, 1}), InputError);
  Theory tup = parse_program("p((a, b)).");
  CHECK(eligible_positions(tup).empty());
  CHECK_THROWS_AS(existential_intro_transform(tup, AtomSelector{0, 0, 0}), InputError);
}
