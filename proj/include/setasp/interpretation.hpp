#pragma once

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "setasp/domain.hpp"
#include "setasp/grounding.hpp"
#include "setasp/syntax.hpp"
#include "setasp/value.hpp"

namespace setasp {

enum class World : std::uint8_t { Here = 0, There = 1 };

/// A ground application f(c1,...,cn) of a declared evaluable function.
struct FnKey {
  std::string name;
  std::vector<Value> args;

  std::string to_string() const;
  friend bool operator==(const FnKey&, const FnKey&) = default;
  friend std::strong_ordering operator<=>(const FnKey& a, const FnKey& b);
};

/// Finite representation of sigma. Missing entries are undefined.
struct Assignment {
  std::map<FnKey, Value> facts;  // declared evaluable functions
  /// Closure values of intensional sets and aggregate applications, keyed by
  /// the ground term text, e.g. "{X:q(X)}" or "count{X:p(X)}".
  std::map<std::string, Value> derived;

  Value fact(const FnKey& k) const;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// s1 <= s2: every defined entry of s1 has the same value in s2.
bool assignment_leq(const Assignment& s1, const Assignment& s2);

struct HTInterpretation {
  Assignment sigma_h;
  Assignment sigma_t;
  std::set<Atom> atoms_h;
  std::set<Atom> atoms_t;

  static HTInterpretation total(Assignment sigma, std::set<Atom> atoms);
  bool is_total() const { return atoms_h == atoms_t && sigma_h == sigma_t; }
  /// H subset of T and sigma_h <= sigma_t.
  bool well_formed() const;
  friend bool operator==(const HTInterpretation&, const HTInterpretation&) = default;
};

/// Same t-part, smaller-or-equal h-part.
bool interp_leq(const HTInterpretation& i1, const HTInterpretation& i2);

/// Everything evaluation needs besides the interpretation.
struct EvalContext {
  const Theory* theory = nullptr;
  DomainBounds bounds;
  std::vector<Value> domain;  // quantifier and set-binder range
};

EvalContext make_context(const Theory& th, const DomainBounds& bounds);

class AtomOracle {
 public:
  virtual ~AtomOracle() = default;
  virtual bool holds(World w, const Atom& a) const = 0;
};

class AtomSetOracle : public AtomOracle {
 public:
  AtomSetOracle(const std::set<Atom>& h, const std::set<Atom>& t) : h_(&h), t_(&t) {}
  bool holds(World w, const Atom& a) const override {
    return (w == World::Here ? h_ : t_)->count(a) > 0;
  }

 private:
  const std::set<Atom>* h_;
  const std::set<Atom>* t_;
};

/// S-satisfaction and term evaluation over one HT-interpretation.
///
/// In Coherent mode intensional sets get their closure values on demand, so
/// the interpretation is coherent by construction. In Explicit mode they are
/// read from Assignment::derived, as the raw definition requires.
class Evaluator {
 public:
  enum class SetMode { Coherent, Explicit };

  Evaluator(const EvalContext& ctx, const AtomOracle& atoms, const Assignment& sigma_h,
            const Assignment& sigma_t, SetMode mode = SetMode::Coherent);

  Value eval(const Term& t, Env& env, World w);
  bool sat(const Formula& f, Env& env, World w);
  /// ext(I, w, tau) for an intensional set: Undef when some element is.
  Value ext(const Term& set, Env& env, World w);

  /// Drop cached values after the atoms or assignment changed.
  void reset();
  /// Drop only h-dependent cached values (the t-part is unchanged).
  void reset_here();

 private:
  struct MemoKey {
    const Term* term;
    std::vector<Value> env;
    friend bool operator==(const MemoKey&, const MemoKey&) = default;
  };
  struct MemoHash {
    std::size_t operator()(const MemoKey& k) const;
  };

  Value set_value(const Term& t, Env& env, World w);
  Value eval_tuple(const std::vector<TermPtr>& elems, Env& env, World w);

  const EvalContext* ctx_;
  const AtomOracle* atoms_;
  const Assignment* sigma_[2];
  SetMode mode_;
  std::unordered_map<MemoKey, Value, MemoHash> memo_[2];
};

/// Text of a term with the environment substituted, used as a derived key.
std::string ground_text(const Term& t, const Env& env);

/// I-diamond: recomputes the closure values of every intensional set and
/// aggregate application occurring in the ground theory (inner binders range
/// over the domain). Declared-function facts and atoms are kept.
HTInterpretation coherence_closure(const EvalContext& ctx, const HTInterpretation& interp,
                                   const GroundTheory& gt);

bool is_coherent(const EvalContext& ctx, const HTInterpretation& interp, const GroundTheory& gt);

/// S-satisfaction of one formula, reading set values explicitly.
bool satisfies(const EvalContext& ctx, const HTInterpretation& interp, World w, const Formula& phi,
               Env env = {});

/// interp is coherent and satisfies every instance at h.
bool models(const EvalContext& ctx, const HTInterpretation& interp, const GroundTheory& gt);

}  // namespace setasp
