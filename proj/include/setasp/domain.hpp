#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "setasp/syntax.hpp"
#include "setasp/value.hpp"

namespace setasp {

/// Finitization of the (infinite) value universe.
struct DomainBounds {
  int max_herbrand_depth = 2;
  std::int64_t min_int = 0;
  std::int64_t max_int = 10;
  int max_set_rank = 1;
  int max_set_card = 4;
  int max_tuple_arity = 2;
  bool full_domain = false;
  std::size_t hard_cap = 200000;

  bool admits_int(std::int64_t v) const { return v >= min_int && v <= max_int; }
  /// Membership in the bounded universe D^max_set_rank.
  bool admits(const Value& v) const;
};

/// D^i restricted by the bounds. `with_integers` adds the integer range to D^0.
/// Throws BoundsError when the level would exceed bounds.hard_cap.
std::vector<Value> build_domain_level(const Signature& sig, const DomainBounds& bounds, int i,
                                      bool with_integers = false);

/// True when the theory mentions integers, arithmetic or aggregates.
bool uses_integers(const Theory& th);

/// Values quantifiers and set binders range over. Throws InputError when a
/// literal lies outside the bounds and BoundsError on explosion.
std::vector<Value> build_active_domain(const Theory& th, const DomainBounds& bounds);

}  // namespace setasp
