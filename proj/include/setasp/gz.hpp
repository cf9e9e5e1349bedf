#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "setasp/interpretation.hpp"
#include "setasp/solver.hpp"

namespace setasp {

struct GzCheck {
  bool ok = true;
  std::string diagnostic;  // first violating construct when !ok
};

/// Whether every formula lies in the aggregate fragment: predicate atoms over
/// arithmetic terms, comparisons, and set atoms f{X1..Xn : body} rel term with
/// a builtin aggregate f and a set-free body, joined by and/or/implication.
GzCheck is_gz_theory(const Theory& th);

/// True when the formula is a set atom; sets `agg` to the aggregate side.
bool is_set_atom(const Formula& f, const Term** agg = nullptr);

/// Classical satisfaction of a ground fragment formula by an atom set.
/// Set binders range over ctx.domain.
bool cl_satisfies(const EvalContext& ctx, const std::set<Atom>& T, const Formula& phi);

/// The reduct of a ground fragment formula with respect to T, simplified by
/// the usual Top/Bot identities.
FormulaPtr reduct(const EvalContext& ctx, const std::set<Atom>& T, const Formula& phi);

/// Reducts of all ground instances, dropping those equal to Top.
std::vector<FormulaPtr> theory_reduct(const EvalContext& ctx, const GroundTheory& gt,
                                      const std::set<Atom>& T);

struct GzOptions {
  bool prune = true;
  bool parallel = true;
  std::size_t max_free_bits = 26;
};

/// Stable models under the reduct semantics, sorted. Throws InputError when
/// the theory is outside the fragment.
std::vector<std::vector<Atom>> gz_stable_models(const Theory& th, const DomainBounds& bounds,
                                                const GzOptions& opts = {});
std::vector<std::vector<Atom>> gz_stable_models(const EvalContext& ctx, const GroundTheory& gt,
                                                const GzOptions& opts = {});

struct CrossCheck {
  std::vector<std::vector<Atom>> gz_models;
  std::vector<std::vector<Atom>> eq_models;
  bool agree() const { return gz_models == eq_models; }
};

CrossCheck cross_check(const Theory& th, const DomainBounds& bounds, bool parallel = true);

}  // namespace setasp
