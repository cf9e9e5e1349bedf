#pragma once

#include <vector>

#include "setasp/domain.hpp"
#include "setasp/syntax.hpp"
#include "setasp/value.hpp"

namespace setasp {

/// Reference equilibrium-model enumerator for theories without intensional
/// sets or aggregates. It shares only parsing and the domain with the main
/// solver: quantifiers are evaluated directly, every atom over the theory's
/// predicates is a candidate and nothing is pruned. Sets that occur as values
/// are plain constants here. Throws InputError on intensional sets or
/// aggregates and BoundsError above `max_bits` candidate bits.
std::vector<std::vector<Atom>> sqhtf_stable_models(const Theory& th, const DomainBounds& bounds,
                                                   std::size_t max_bits = 20);

}  // namespace setasp
