#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "setasp/syntax.hpp"

namespace setasp {

/// An argument position of a predicate atom (builtin comparisons included).
/// Atoms are numbered in pre-order within one theory formula, counting atoms
/// inside intensional-set bodies after the atom that contains them.
struct AtomSelector {
  std::size_t formula = 0;
  std::size_t atom = 0;
  std::size_t arg = 0;

  std::string to_string() const;  // "formula:atom:arg"
  friend bool operator==(const AtomSelector&, const AtomSelector&) = default;
  friend auto operator<=>(const AtomSelector&, const AtomSelector&) = default;
};

/// Parses "F:A:I"; throws InputError on malformed text.
AtomSelector parse_selector(const std::string& text);

/// Every position whose argument is not a tuple.
std::vector<AtomSelector> eligible_positions(const Theory& th);

/// Replaces p(..., t, ...) at each selected position by
/// exists V (V = t and p(..., V, ...)) with a fresh variable V.
/// Throws InputError when a selector is out of range or not eligible.
Theory existential_intro_transform(const Theory& th, const std::vector<AtomSelector>& selectors);
Theory existential_intro_transform(const Theory& th, const AtomSelector& selector);

}  // namespace setasp
