#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace setasp {

/// Canonical ground datum: a Herbrand term, an integer, a flat tuple, a finite
/// set of same-arity tuples, or the undefined mark.
///
/// Values are immutable and cheap to copy. Undef never occurs inside another
/// value, tuples never directly contain tuples, and set members are kept sorted
/// and duplicate-free so structural equality is set equality.
class Value {
 public:
  enum class Kind : std::uint8_t { Undef = 0, Int, Symbol, Tuple, Set };

  Value() = default;

  static Value undef() { return Value(); }
  static Value integer(std::int64_t v);
  static Value symbol(std::string name, std::vector<Value> args = {});
  /// A single element collapses to the element itself (1-tuples are bare).
  static Value tuple(std::vector<Value> elems);
  /// Sorts and deduplicates; throws std::invalid_argument on mixed arities.
  static Value set(std::vector<Value> members);

  Kind kind() const { return kind_; }
  bool is_undef() const { return kind_ == Kind::Undef; }
  bool is_int() const { return kind_ == Kind::Int; }
  bool is_symbol() const { return kind_ == Kind::Symbol; }
  bool is_tuple() const { return kind_ == Kind::Tuple; }
  bool is_set() const { return kind_ == Kind::Set; }

  std::int64_t as_int() const { return int_; }
  const std::string& name() const;
  /// Symbol arguments, tuple elements or set members.
  std::span<const Value> items() const;
  std::size_t size() const { return items().size(); }

  /// Arity as a set member: tuple length, or 1 for any other defined value.
  std::size_t arity() const { return is_tuple() ? size() : 1; }
  /// Arity shared by the members of a set; 0 for the empty set.
  std::size_t member_arity() const;
  /// Nesting depth of Herbrand constructors (constants have depth 0).
  int herbrand_depth() const;
  /// Number of set levels (D^i index): 0 for sets-free values.
  int set_rank() const;

  std::size_t hash() const;
  std::string to_string() const;

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  struct Node;
  Value(Kind k, std::int64_t i, std::shared_ptr<const Node> n)
      : kind_(k), int_(i), node_(std::move(n)) {}

  Kind kind_ = Kind::Undef;
  std::int64_t int_ = 0;
  std::shared_ptr<const Node> node_;
};

/// A ground predicate atom p(c1,...,cn).
struct Atom {
  std::string pred;
  std::vector<Value> args;

  std::size_t hash() const;
  std::string to_string() const;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
};

using ValueSet = std::vector<Value>;  // sorted, unique

void sort_unique(std::vector<Value>& values);
void sort_unique(std::vector<Atom>& atoms);

}  // namespace setasp

template <>
struct std::hash<setasp::Value> {
  std::size_t operator()(const setasp::Value& v) const noexcept { return v.hash(); }
};

template <>
struct std::hash<setasp::Atom> {
  std::size_t operator()(const setasp::Atom& a) const noexcept { return a.hash(); }
};
