#pragma once

#include <cstddef>
#include <vector>

#include "setasp/syntax.hpp"

namespace setasp {

/// One instance of a theory formula: the formula below its leading universal
/// quantifiers together with the values chosen for them. Set-bound variables
/// are never instantiated.
struct GroundInstance {
  FormulaPtr formula;
  Env env;
  std::size_t source = 0;  // index into Theory::formulas
};

struct GroundTheory {
  std::vector<GroundInstance> instances;
};

/// Instantiates every formula over the domain. Throws BoundsError naming the
/// formula when more than `cap` instances would be produced.
GroundTheory ground_theory(const Theory& th, const std::vector<Value>& domain,
                           std::size_t cap = 2000000);

/// The instance as a formula with its variables replaced by values.
FormulaPtr materialize(const GroundInstance& gi);

}  // namespace setasp
