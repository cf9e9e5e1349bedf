#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "setasp/value.hpp"

namespace setasp {

struct Term;
struct Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class TermKind : std::uint8_t {
  Var,
  Const,     // ground value leaf: integers, folded Herbrand terms, substituted values
  Herbrand,  // constructor application with a non-ground argument
  Eval,      // evaluable function or aggregate application
  ExtSet,
  IntSet,
  Arith,  // + - * /
  SetOp,  // | (union) & (intersection) \ (difference)
  Tuple,
};

struct Term {
  TermKind kind = TermKind::Const;
  std::string name;  // variable, functor or operator symbol
  Value value;       // Const only
  bool aggregate = false;  // Eval with builtin aggregate semantics
  std::vector<TermPtr> args;         // children; the head tuple for IntSet
  std::vector<std::string> bound;    // IntSet bound variables
  FormulaPtr body;                   // IntSet condition
  int rank = 0;
  std::vector<std::string> free;  // free variables in first-occurrence order
};

enum class FormulaKind : std::uint8_t { Bot, Top, Pred, Eq, And, Or, Implies, Forall, Exists };

struct Formula {
  FormulaKind kind = FormulaKind::Top;
  std::string name;  // predicate, or the quantified variable
  bool builtin = false;  // Pred over one of <= >= < > != in
  std::vector<TermPtr> args;  // Pred arguments, or the two sides of Eq
  FormulaPtr lhs, rhs;        // connectives; quantifier body is lhs
  int rank = 0;
  std::vector<std::string> free;

  bool is_negation() const { return kind == FormulaKind::Implies && rhs->kind == FormulaKind::Bot; }
};

bool is_builtin_relation(std::string_view name);
bool is_builtin_aggregate(std::string_view name);

// Term factories. Ground constructor terms, tuples and extensional sets fold to Const.
TermPtr make_var(std::string name);
TermPtr make_const(Value v);
TermPtr make_herbrand(std::string name, std::vector<TermPtr> args);
TermPtr make_eval(std::string name, std::vector<TermPtr> args, bool aggregate);
TermPtr make_ext_set(std::vector<TermPtr> elems);
/// Throws std::invalid_argument on duplicate or unused bound variables.
TermPtr make_int_set(std::vector<std::string> bound, std::vector<TermPtr> head, FormulaPtr body);
TermPtr make_arith(std::string op, TermPtr l, TermPtr r);
TermPtr make_set_op(std::string op, TermPtr l, TermPtr r);
TermPtr make_tuple(std::vector<TermPtr> elems);

FormulaPtr make_bot();
FormulaPtr make_top();
FormulaPtr make_pred(std::string name, std::vector<TermPtr> args);
FormulaPtr make_eq(TermPtr l, TermPtr r);
FormulaPtr make_and(FormulaPtr l, FormulaPtr r);
FormulaPtr make_or(FormulaPtr l, FormulaPtr r);
FormulaPtr make_implies(FormulaPtr l, FormulaPtr r);
FormulaPtr make_not(FormulaPtr f);
FormulaPtr make_forall(std::string var, FormulaPtr body);
FormulaPtr make_exists(std::string var, FormulaPtr body);
/// Conjunction of a list; the empty list is Top.
FormulaPtr make_conj(const std::vector<FormulaPtr>& fs);
FormulaPtr make_disj(const std::vector<FormulaPtr>& fs);
/// Universal closure over the free variables, outermost first.
FormulaPtr close_universally(FormulaPtr f);

inline int rank(const Term& t) { return t.rank; }
inline int rank(const Formula& f) { return f.rank; }
inline const std::vector<std::string>& free_vars(const Term& t) { return t.free; }
inline const std::vector<std::string>& free_vars(const Formula& f) { return f.free; }

struct Binding {
  std::string_view name;
  Value value;
};
/// Variable environment; later bindings shadow earlier ones.
using Env = std::vector<Binding>;

const Value* lookup(const Env& env, std::string_view name);

/// Replaces free occurrences of bound variables by Const leaves.
TermPtr substitute(const TermPtr& t, const Env& env);
FormulaPtr substitute(const FormulaPtr& f, const Env& env);

/// Structural equality of syntax trees.
bool same_term(const Term& a, const Term& b);
bool same_formula(const Formula& a, const Formula& b);

using SymbolKey = std::pair<std::string, int>;  // name / arity

struct Signature {
  std::set<SymbolKey> constructors;
  std::set<SymbolKey> functions;  // user-declared evaluable functions
  std::set<std::string> aggregates;  // builtin aggregate names in use
  std::set<SymbolKey> predicates;
};

struct Theory {
  Signature sig;
  std::vector<FormulaPtr> formulas;  // closed
  std::map<std::string, std::vector<Value>> function_ranges;  // declared function -> graph range
};

/// Every Const value, and every integer literal, occurring in the theory.
std::vector<Value> theory_constants(const Theory& th);

}  // namespace setasp
