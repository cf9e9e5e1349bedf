#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "setasp/domain.hpp"

namespace setasp {

struct GeneratorConfig {
  int max_predicates = 3;  // arity 0 or 1 each
  int max_rules = 5;
  int max_body = 2;
  int constants = 3;  // a, b, c
  std::int64_t min_int = 0;
  std::int64_t max_int = 3;
  /// Programs whose pruned search space has more free atoms are re-rolled.
  std::size_t max_free_atoms = 12;
};

/// Bounds that match the generator's constants and integer range.
DomainBounds generator_bounds(const GeneratorConfig& cfg = {});

/// A random program of the aggregate fragment (count/sum set atoms under
/// >=, = or <=, negation, facts and constraints). Deterministic in the seed.
std::string generate_gz_program(std::uint64_t seed, const GeneratorConfig& cfg = {});

/// A random program without intensional sets or aggregates. Some programs
/// declare a nullary function `f` with range {a;b} and use it in atoms.
std::string generate_plain_program(std::uint64_t seed, const GeneratorConfig& cfg = {});

}  // namespace setasp
