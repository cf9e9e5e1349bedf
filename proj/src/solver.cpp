#include "setasp/solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>

#include "setasp/errors.hpp"

#ifdef SETASP_HAVE_OPENMP
#include <omp.h>
#endif

namespace setasp {

std::set<Atom> SearchSpace::atoms_of(std::uint64_t mask) const {
  std::set<Atom> out = facts;
  for (std::size_t i = 0; i < free_atoms.size(); ++i)
    if (mask >> i & 1u) out.insert(free_atoms[i]);
  return out;
}

bool MaskOracle::holds(World w, const Atom& a) const {
  if (space_->facts.count(a)) return true;
  auto it = space_->index.find(a);
  return it != space_->index.end() && (mask_[static_cast<int>(w)] >> it->second & 1u);
}

std::vector<FormulaPtr> materialize_all(const GroundTheory& gt, const EvalContext& ctx) {
  std::vector<FormulaPtr> out;
  out.reserve(gt.instances.size());
  for (const auto& gi : gt.instances) out.push_back(simplify(materialize(gi), ctx));
  return out;
}

namespace {

bool static_atom(const Formula& f) {
  if (f.kind != FormulaKind::Pred || f.builtin) return false;
  return std::all_of(f.args.begin(), f.args.end(),
                     [](const TermPtr& t) { return t->kind == TermKind::Const; });
}

Atom to_atom(const Formula& f) {
  Atom a{f.name, {}};
  for (const auto& t : f.args) a.args.push_back(t->value);
  return a;
}

// Head of a rule whose atoms can be collected directly.
bool simple_head(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Bot: return true;
    case FormulaKind::Pred: return static_atom(f);
    case FormulaKind::And:
    case FormulaKind::Or: return simple_head(*f.lhs) && simple_head(*f.rhs);
    default: return false;
  }
}

void head_atoms(const Formula& f, std::vector<Atom>& out) {
  if (f.kind == FormulaKind::Pred) out.push_back(to_atom(f));
  if (f.kind == FormulaKind::And || f.kind == FormulaKind::Or) {
    head_atoms(*f.lhs, out);
    head_atoms(*f.rhs, out);
  }
}

class Universe {
 public:
  Universe(const EvalContext& ctx) : ctx_(ctx) {}

  void add_all(const std::string& pred, std::size_t arity) {
    if (!saturated_.insert({pred, arity}).second) return;
    std::size_t n = 1;
    for (std::size_t i = 0; i < arity; ++i) {
      n *= ctx_.domain.size();
      if (n > ctx_.bounds.hard_cap)
        throw BoundsError("hard_cap", "too many candidate atoms for " + pred + "/" +
                                          std::to_string(arity));
    }
    std::vector<std::size_t> idx(arity, 0);
    if (arity > 0 && ctx_.domain.empty()) return;
    while (true) {
      Atom a{pred, {}};
      for (auto i : idx) a.args.push_back(ctx_.domain[i]);
      atoms.insert(std::move(a));
      std::size_t k = arity;
      while (k > 0) {
        --k;
        if (++idx[k] < ctx_.domain.size()) break;
        idx[k] = 0;
        if (k == 0) return;
      }
      if (arity == 0) return;
    }
  }

  bool add(const Atom& a) { return atoms.insert(a).second; }
  bool contains(const Atom& a) const { return atoms.count(a) > 0; }

  // Positive occurrences in a formula that is not a simple rule.
  void occurrences(const Formula& f, bool positive) {
    switch (f.kind) {
      case FormulaKind::Pred:
        if (!f.builtin && positive) {
          if (static_atom(f)) add(to_atom(f));
          else add_all(f.name, f.args.size());
        }
        [[fallthrough]];
      case FormulaKind::Eq:
        for (const auto& t : f.args) term(*t, positive);
        break;
      case FormulaKind::And:
      case FormulaKind::Or:
        occurrences(*f.lhs, positive);
        occurrences(*f.rhs, positive);
        break;
      case FormulaKind::Implies:
        occurrences(*f.lhs, !positive);
        occurrences(*f.rhs, positive);
        break;
      case FormulaKind::Forall:
      case FormulaKind::Exists: occurrences(*f.lhs, positive); break;
      default: break;
    }
  }

  void term(const Term& t, bool positive) {
    if (t.kind == TermKind::IntSet) occurrences(*t.body, positive);
    for (const auto& a : t.args) term(*a, positive);
  }

  // Body evaluation where everything not decidable from the universe holds.
  bool optimistic(const Formula& f) const {
    switch (f.kind) {
      case FormulaKind::Bot: return false;
      case FormulaKind::Pred:
        if (!f.builtin && static_atom(f)) return contains(to_atom(f));
        return true;
      case FormulaKind::Eq: return optimistic_eq(f);
      case FormulaKind::And: return optimistic(*f.lhs) && optimistic(*f.rhs);
      case FormulaKind::Or: return optimistic(*f.lhs) || optimistic(*f.rhs);
      default: return true;
    }
  }

  // v = {X : body} can only hold if every member of v may satisfy the body.
  bool optimistic_eq(const Formula& f) const {
    for (int side = 0; side < 2; ++side) {
      const Term& set = *f.args[side];
      if (set.kind != TermKind::IntSet || !set.free.empty() || set.bound.size() != 1 ||
          set.args.size() != 1 || set.args[0]->kind != TermKind::Var || set.args[0]->name != set.bound[0])
        continue;
      auto v = static_value(*f.args[1 - side], ctx_);
      if (!v) continue;
      if (!v->is_set()) return false;
      for (const Value& e : v->items())
        if (!optimistic(*substitute(set.body, Env{{set.bound[0], e}}))) return false;
    }
    return true;
  }

  std::set<Atom> atoms;

 private:
  const EvalContext& ctx_;
  std::set<std::pair<std::string, std::size_t>> saturated_;
};

void finish_space(SearchSpace& s, const std::set<Atom>& universe) {
  for (const auto& a : universe)
    if (!s.facts.count(a)) s.free_atoms.push_back(a);
  for (std::size_t i = 0; i < s.free_atoms.size(); ++i) s.index.emplace(s.free_atoms[i], i);
  AtomScope scope{&universe, &s.facts};
  for (const auto& f : s.raw) {
    auto g = simplify(f, *s.ctx, scope);
    if (g->kind == FormulaKind::Top) continue;
    if (g->kind == FormulaKind::Bot) s.inconsistent = true;
    s.instances.push_back(std::move(g));
  }
}

std::vector<FunctionSlot> function_slots(const EvalContext& ctx) {
  std::vector<FunctionSlot> slots;
  const Theory& th = *ctx.theory;
  for (const auto& [name, arity] : th.sig.functions) {
    auto range = th.function_ranges.find(name);
    if (range == th.function_ranges.end())
      throw InputError("function " + name + "/" + std::to_string(arity) +
                       " needs a #function range declaration");
    std::vector<std::size_t> idx(arity, 0);
    if (arity > 0 && ctx.domain.empty()) continue;
    while (true) {
      FnKey key{name, {}};
      for (auto i : idx) key.args.push_back(ctx.domain[i]);
      slots.push_back({std::move(key), range->second});
      if (slots.size() > 64) throw BoundsError("max_free_bits", "too many function applications");
      std::size_t k = arity;
      bool done = arity == 0;
      while (k > 0) {
        --k;
        if (++idx[k] < ctx.domain.size()) break;
        idx[k] = 0;
        if (k == 0) done = true;
      }
      if (done) break;
    }
  }
  return slots;
}

}  // namespace

SearchSpace build_search_space(const EvalContext& ctx, const GroundTheory& gt, bool prune) {
  SearchSpace s;
  s.ctx = &ctx;
  s.raw = materialize_all(gt, ctx);
  s.slots = function_slots(ctx);
  Universe u(ctx);
  if (!prune) {
    for (const auto& [pred, arity] : ctx.theory->sig.predicates) u.add_all(pred, arity);
    finish_space(s, u.atoms);
    return s;
  }
  std::vector<std::pair<const Formula*, std::vector<Atom>>> rules;
  for (const auto& f : s.raw) {
    if (static_atom(*f)) {
      s.facts.insert(to_atom(*f));
      u.add(to_atom(*f));
    } else if (simple_head(*f)) {
      std::vector<Atom> head;
      head_atoms(*f, head);
      for (auto& a : head) u.add(a);
    } else if (f->kind == FormulaKind::Implies && simple_head(*f->rhs)) {
      std::vector<Atom> head;
      head_atoms(*f->rhs, head);
      if (!head.empty()) rules.emplace_back(f->lhs.get(), std::move(head));
    } else {
      u.occurrences(*f, true);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [body, head] : rules) {
      if (std::all_of(head.begin(), head.end(), [&](const Atom& a) { return u.contains(a); }))
        continue;
      if (!u.optimistic(*body)) continue;
      for (const auto& a : head) changed |= u.add(a);
    }
  }
  finish_space(s, u.atoms);
  return s;
}

SearchSpace restricted_space(const EvalContext& ctx, const GroundTheory& gt,
                             const std::set<Atom>& atoms) {
  SearchSpace s;
  s.ctx = &ctx;
  s.raw = materialize_all(gt, ctx);
  for (const auto& f : s.raw)
    if (static_atom(*f)) s.facts.insert(to_atom(*f));
  std::set<Atom> universe = atoms;
  universe.insert(s.facts.begin(), s.facts.end());
  finish_space(s, universe);
  return s;
}

namespace {

// Per-thread evaluation state.
class Worker {
 public:
  explicit Worker(const SearchSpace& s)
      : space_(s), oracle_(s), ev_(*s.ctx, oracle_, sigma_h_, sigma_t_) {}

  void set_total(const Assignment& sigma, std::uint64_t mask) {
    sigma_t_ = sigma;
    sigma_h_ = sigma;
    mask_ = mask;
    oracle_.set(mask, mask);
    ev_.reset();
  }

  bool total_model() {
    if (space_.inconsistent) return false;
    for (const auto& f : space_.instances) {
      Env env;
      if (!ev_.sat(*f, env, World::There)) return false;
    }
    return true;
  }

  // Strictly smaller h-part satisfying the theory, smallest first.
  std::optional<std::pair<std::uint64_t, Assignment>> smaller_model() {
    std::vector<std::size_t> bits;
    for (std::size_t i = 0; i < space_.free_atoms.size(); ++i)
      if (mask_ >> i & 1u) bits.push_back(i);
    std::vector<const FnKey*> defined;
    for (const auto& [k, v] : sigma_t_.facts) defined.push_back(&k);
    std::size_t width = bits.size() + defined.size();
    if (width >= 64) throw BoundsError("max_free_bits", "minimality check too wide");
    std::uint64_t limit = std::uint64_t{1} << width;
    for (std::size_t c = 0; c < width; ++c) {
      for (std::uint64_t sub = (std::uint64_t{1} << c) - 1; sub < limit;) {
        std::uint64_t here = 0;
        for (std::size_t i = 0; i < bits.size(); ++i)
          if (sub >> i & 1u) here |= std::uint64_t{1} << bits[i];
        sigma_h_.facts.clear();
        for (std::size_t j = 0; j < defined.size(); ++j)
          if (sub >> (bits.size() + j) & 1u) sigma_h_.facts.emplace(*defined[j], sigma_t_.fact(*defined[j]));
        oracle_.set(here, mask_);
        ev_.reset_here();
        if (here_model()) {
          auto result = std::make_pair(here, sigma_h_);
          restore();
          return result;
        }
        if (sub == 0) break;
        // Next subset with the same popcount.
        std::uint64_t t = sub | (sub - 1);
        sub = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(sub) + 1));
      }
    }
    restore();
    return std::nullopt;
  }

 private:
  // The t-part of every instance is known to hold.
  bool here_model() {
    for (const auto& f : space_.instances) {
      Env env;
      if (f->kind == FormulaKind::Implies) {
        if (ev_.sat(*f->lhs, env, World::Here) && !ev_.sat(*f->rhs, env, World::Here))
          return false;
      } else if (!ev_.sat(*f, env, World::Here)) {
        return false;
      }
    }
    return true;
  }

  void restore() {
    sigma_h_ = sigma_t_;
    oracle_.set(mask_, mask_);
    ev_.reset_here();
  }

  const SearchSpace& space_;
  MaskOracle oracle_;
  Assignment sigma_h_, sigma_t_;
  Evaluator ev_;
  std::uint64_t mask_ = 0;
};

Assignment combo_assignment(const SearchSpace& s, std::uint64_t combo) {
  Assignment a;
  for (const auto& slot : s.slots) {
    std::uint64_t radix = slot.range.size() + 1;
    std::uint64_t digit = combo % radix;
    combo /= radix;
    if (digit > 0) a.facts.emplace(slot.key, slot.range[digit - 1]);
  }
  return a;
}

std::vector<Atom> sorted_atoms(const std::set<Atom>& s) { return {s.begin(), s.end()}; }

}  // namespace

Assignment witness_assignment(const EvalContext& ctx, const GroundTheory& gt,
                              const Assignment& sigma, const std::set<Atom>& atoms) {
  Assignment facts_only;
  facts_only.facts = sigma.facts;
  return coherence_closure(ctx, HTInterpretation::total(facts_only, atoms), gt).sigma_t;
}

StableModelReport find_stable_models(const Theory& th, const DomainBounds& bounds,
                                     const SolveOptions& opts) {
  EvalContext ctx = make_context(th, bounds);
  GroundTheory gt = ground_theory(th, ctx.domain);
  return find_stable_models(ctx, gt, opts);
}

StableModelReport find_stable_models(const EvalContext& ctx, const GroundTheory& gt,
                                     const SolveOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  SearchSpace space = build_search_space(ctx, gt, opts.prune);
  StableModelReport report;
  std::size_t n = space.free_atoms.size();
  std::uint64_t combos = 1;
  for (const auto& slot : space.slots) {
    combos *= slot.range.size() + 1;
    if (combos > (std::uint64_t{1} << opts.max_free_bits))
      throw BoundsError("max_free_bits", "too many function assignments");
  }
  if (n > opts.max_free_bits || (combos << n) > (std::uint64_t{1} << opts.max_free_bits) ||
      (combos << n) >> n != combos)
    throw BoundsError("max_free_bits", std::to_string(n) + " free atoms and " +
                                           std::to_string(combos) + " function assignments");
  report.stats.free_atoms = n;
  report.stats.function_slots = space.slots.size();
  std::uint64_t total = combos << n;
  report.stats.candidates = total;

  std::vector<std::pair<std::uint64_t, std::uint64_t>> found;  // candidate index, mask
  std::size_t total_models = 0;
  auto run = [&](std::uint64_t begin, std::uint64_t end, std::uint64_t step,
                 std::vector<std::pair<std::uint64_t, std::uint64_t>>& out, std::size_t& models) {
    Worker w(space);
    for (std::uint64_t idx = begin; idx < end; idx += step) {
      std::uint64_t combo = idx >> n;
      std::uint64_t mask = idx & ((std::uint64_t{1} << n) - 1);
      w.set_total(combo_assignment(space, combo), mask);
      if (!w.total_model()) continue;
      ++models;
      if (!w.smaller_model()) out.emplace_back(idx, mask);
    }
  };

#ifdef SETASP_HAVE_OPENMP
  if (opts.parallel && total > 1) {
#pragma omp parallel
    {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> local;
      std::size_t models = 0;
      auto threads = static_cast<std::uint64_t>(omp_get_num_threads());
      run(static_cast<std::uint64_t>(omp_get_thread_num()), total, threads, local, models);
#pragma omp critical
      {
        found.insert(found.end(), local.begin(), local.end());
        total_models += models;
      }
    }
  } else
#endif
  {
    run(0, total, 1, found, total_models);
  }
  report.stats.total_models = total_models;
  std::sort(found.begin(), found.end());
  std::set<std::vector<Atom>> seen;
  for (const auto& [idx, mask] : found) {
    auto atoms = space.atoms_of(mask);
    auto key = sorted_atoms(atoms);
    if (!seen.insert(key).second) continue;
    report.models.push_back(
        {std::move(key), witness_assignment(ctx, gt, combo_assignment(space, idx >> n), atoms)});
  }
  std::sort(report.models.begin(), report.models.end(),
            [](const StableModel& a, const StableModel& b) { return a.atoms < b.atoms; });
  report.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

EquilibriumCheck check_equilibrium(const EvalContext& ctx, const GroundTheory& gt,
                                   const Assignment& sigma, const std::set<Atom>& atoms) {
  EquilibriumCheck result;
  SearchSpace space = restricted_space(ctx, gt, atoms);
  if (!std::includes(atoms.begin(), atoms.end(), space.facts.begin(), space.facts.end()))
    return result;
  if (space.free_atoms.size() >= 64) throw BoundsError("max_free_bits", "too many atoms");
  Assignment facts_only;
  facts_only.facts = sigma.facts;
  Worker w(space);
  w.set_total(facts_only, (std::uint64_t{1} << space.free_atoms.size()) - 1);
  result.is_model = w.total_model();
  if (!result.is_model) return result;
  auto smaller = w.smaller_model();
  result.equilibrium = !smaller;
  if (smaller) {
    HTInterpretation raw;
    raw.sigma_t = facts_only;
    raw.sigma_h = smaller->second;
    raw.atoms_t = atoms;
    raw.atoms_h = space.atoms_of(smaller->first);
    result.countermodel = coherence_closure(ctx, raw, gt);
  }
  return result;
}

}  // namespace setasp
