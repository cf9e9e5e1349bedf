#pragma once

#include <optional>
#include <set>

#include "setasp/interpretation.hpp"

namespace setasp {

/// Which ground atoms can be true at all, and which are true everywhere.
/// Used to simplify instances for a restricted candidate space.
struct AtomScope {
  const std::set<Atom>* universe = nullptr;  // nullptr: any atom may hold
  const std::set<Atom>* facts = nullptr;     // atoms true at both worlds
};

/// A term is static when its value does not depend on the interpretation:
/// ground, without intensional sets and without declared functions.
bool is_static(const Term& t);

/// The value of a static term (possibly Undef); nullopt otherwise.
std::optional<Value> static_value(const Term& t, const EvalContext& ctx);

/// Equivalence-preserving rewrite of a ground formula: folds static terms,
/// decides static atoms, replaces exists x (x = v and psi) by psi[v] and
/// removes Top/Bot by the usual identities. Equivalence holds in every
/// interpretation whose atoms respect the scope.
FormulaPtr simplify(const FormulaPtr& f, const EvalContext& ctx, const AtomScope& scope = {});

}  // namespace setasp
