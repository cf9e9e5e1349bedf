#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "setasp/domain.hpp"
#include "setasp/generator.hpp"
#include "setasp/value.hpp"

namespace setasp {

struct PropertyResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::vector<std::string> failures;  // first few, human readable
  double seconds = 0.0;

  bool ok() const { return violations == 0 && checked > 0; }
  void fail(std::string what);
};

/// Random (coherent interpretation, formula) pairs: h-satisfaction implies
/// t-satisfaction, and not phi holds at w iff phi fails at t.
PropertyResult check_persistence_negation(std::size_t pairs, std::uint64_t seed);

/// Builtin count, sum, max and min against their recursive and rule-based
/// definitions, for every integer set over [0,5] with at most 4 members.
PropertyResult check_definitional_consistency();

/// Main solver versus the reference set-free enumerator on random programs.
PropertyResult check_conservativity(std::size_t programs, std::uint64_t seed);

struct NamedProgram {
  std::string name;
  std::string text;
  DomainBounds bounds;
};

/// Existential introduction at every eligible position (one at a time and
/// all at once) preserves the stable models.
PropertyResult check_existential_intro(const std::vector<NamedProgram>& programs,
                                       std::size_t random, std::uint64_t seed);

/// Pruned and unpruned search spaces give the same stable models.
PropertyResult check_pruning(std::size_t programs, std::uint64_t seed);

struct Disagreement {
  std::string program;
  std::vector<std::vector<Atom>> gz_models;
  std::vector<std::vector<Atom>> eq_models;
  std::string error;  // set when an engine threw
};

struct CrossCheckReport {
  std::size_t trials = 0;
  std::size_t agreements = 0;
  std::vector<Disagreement> disagreements;
  double seconds = 0.0;
};

/// Both engines on `trials` generated programs; trial i uses seed + i.
CrossCheckReport run_cross_check_trials(std::size_t trials, std::uint64_t seed,
                                        const GeneratorConfig& cfg = {});

}  // namespace setasp
