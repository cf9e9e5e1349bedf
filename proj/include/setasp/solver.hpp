#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "setasp/interpretation.hpp"
#include "setasp/simplify.hpp"

namespace setasp {

/// One evaluable-function application whose value is chosen by search.
struct FunctionSlot {
  FnKey key;
  std::vector<Value> range;
};

/// The finite space searched for stable models: ground instances simplified
/// for the atom universe, the atoms that are free to vary, the atoms fixed
/// true, and the declared-function applications.
///
/// In pruned mode the universe is a sound over-approximation of every stable
/// model (a least fixpoint over optimistic rule bodies); facts are fixed.
struct SearchSpace {
  const EvalContext* ctx = nullptr;
  std::vector<FormulaPtr> instances;  // ground, simplified, Top instances dropped
  std::vector<FormulaPtr> raw;        // materialized, before simplification
  bool inconsistent = false;          // some instance simplified to Bot
  std::set<Atom> facts;
  std::vector<Atom> free_atoms;  // sorted
  std::unordered_map<Atom, std::size_t> index;
  std::vector<FunctionSlot> slots;

  std::set<Atom> atoms_of(std::uint64_t mask) const;
};

/// Ground instances with variables replaced, and exists-equalities resolved.
std::vector<FormulaPtr> materialize_all(const GroundTheory& gt, const EvalContext& ctx);

/// Sound candidate space. With `prune` false every atom over the theory's
/// predicates and the domain is free and nothing is fixed.
SearchSpace build_search_space(const EvalContext& ctx, const GroundTheory& gt, bool prune = true);

/// Space whose free atoms are exactly `atoms` minus the facts.
SearchSpace restricted_space(const EvalContext& ctx, const GroundTheory& gt,
                             const std::set<Atom>& atoms);

/// Oracle over bit masks of SearchSpace::free_atoms plus the fixed facts.
class MaskOracle : public AtomOracle {
 public:
  explicit MaskOracle(const SearchSpace& space) : space_(&space) {}
  void set(std::uint64_t here, std::uint64_t there) {
    mask_[0] = here;
    mask_[1] = there;
  }
  bool holds(World w, const Atom& a) const override;

 private:
  const SearchSpace* space_;
  std::uint64_t mask_[2] = {0, 0};
};

struct StableModel {
  std::vector<Atom> atoms;  // sorted
  Assignment sigma;         // declared functions and closure values at t

  friend bool operator==(const StableModel& a, const StableModel& b) { return a.atoms == b.atoms; }
};

struct SearchStats {
  std::size_t candidates = 0;    // total interpretations examined
  std::size_t total_models = 0;  // of which satisfied the theory
  std::size_t free_atoms = 0;
  std::size_t function_slots = 0;
  double seconds = 0.0;
};

struct StableModelReport {
  std::vector<StableModel> models;  // sorted by atom set, deduplicated
  SearchStats stats;
};

struct SolveOptions {
  bool prune = true;
  bool parallel = true;
  std::size_t max_free_bits = 26;  // free atoms plus function slots
};

StableModelReport find_stable_models(const Theory& th, const DomainBounds& bounds,
                                     const SolveOptions& opts = {});
StableModelReport find_stable_models(const EvalContext& ctx, const GroundTheory& gt,
                                     const SolveOptions& opts = {});

struct EquilibriumCheck {
  bool is_model = false;
  bool equilibrium = false;
  std::optional<HTInterpretation> countermodel;  // a strictly smaller coherent model
};

/// Decides whether the total interpretation <sigma, atoms> is an equilibrium
/// model. Only sigma.facts is read; set values are derived.
EquilibriumCheck check_equilibrium(const EvalContext& ctx, const GroundTheory& gt,
                                   const Assignment& sigma, const std::set<Atom>& atoms);

/// All closure values of the ground theory under a total interpretation.
Assignment witness_assignment(const EvalContext& ctx, const GroundTheory& gt,
                              const Assignment& sigma, const std::set<Atom>& atoms);

}  // namespace setasp
