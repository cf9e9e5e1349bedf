#include "setasp/gz.hpp"

#include <algorithm>
#include <stdexcept>

#include "setasp/builtins.hpp"
#include "setasp/errors.hpp"
#include "setasp/printer.hpp"

#ifdef SETASP_HAVE_OPENMP
#include <omp.h>
#endif

namespace setasp {

namespace {

bool arithmetic_relation(const Formula& f) {
  return f.kind == FormulaKind::Eq || (f.kind == FormulaKind::Pred && f.builtin && f.name != "in");
}

// Variables, constants, and constructor or arithmetic terms over them.
bool plain_term(const Term& t) {
  switch (t.kind) {
    case TermKind::Var:
    case TermKind::Const: return true;
    case TermKind::Herbrand:
    case TermKind::Arith:
    case TermKind::Tuple:
      return std::all_of(t.args.begin(), t.args.end(),
                         [](const TermPtr& a) { return plain_term(*a); });
    default: return false;
  }
}

bool set_name(const Term& s) {
  if (s.kind != TermKind::IntSet || s.args.size() != s.bound.size()) return false;
  for (std::size_t i = 0; i < s.args.size(); ++i)
    if (s.args[i]->kind != TermKind::Var || s.args[i]->name != s.bound[i]) return false;
  return true;
}

class FragmentChecker {
 public:
  std::string diagnostic;

  bool formula(const Formula& f, bool in_set) {
    switch (f.kind) {
      case FormulaKind::Bot:
      case FormulaKind::Top: return true;
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Implies: return formula(*f.lhs, in_set) && formula(*f.rhs, in_set);
      case FormulaKind::Forall:
      case FormulaKind::Exists: return fail("quantifier inside a formula: " + to_string(f));
      case FormulaKind::Pred:
      case FormulaKind::Eq: break;
    }
    const Term* agg = nullptr;
    if (is_set_atom(f, &agg)) {
      if (in_set) return fail("nested aggregate: " + to_string(f));
      if (!arithmetic_relation(f)) return fail("aggregate outside an arithmetic comparison: " + to_string(f));
      const Term& other = agg == f.args[0].get() ? *f.args[1] : *f.args[0];
      if (!plain_term(other)) return fail("non-arithmetic bound in set atom: " + to_string(f));
      const Term& s = *agg->args[0];
      if (!set_name(s)) return fail("aggregate argument is not a set name {X1,...,Xn : body}: " + to_string(f));
      return formula(*s.body, true);
    }
    if (f.kind == FormulaKind::Pred && !f.builtin) {
      for (const auto& a : f.args)
        if (!plain_term(*a))
          return fail("predicate argument is not an arithmetic term or constant: " + to_string(f));
      return true;
    }
    if (!arithmetic_relation(f)) return fail("membership test outside the fragment: " + to_string(f));
    for (const auto& a : f.args)
      if (!plain_term(*a)) return fail("set or function term outside a set atom: " + to_string(f));
    return true;
  }

 private:
  bool fail(std::string msg) {
    diagnostic = std::move(msg);
    return false;
  }
};

// Def-by-def classical evaluation, independent of the HT evaluator.
class Classical {
 public:
  Classical(const EvalContext& ctx, const AtomOracle& atoms) : ctx_(ctx), atoms_(atoms) {}

  Value value(const Term& t, const Env& env) const {
    switch (t.kind) {
      case TermKind::Var: {
        const Value* v = lookup(env, t.name);
        if (!v) throw std::logic_error("unbound variable " + t.name);
        return *v;
      }
      case TermKind::Const: return t.value;
      case TermKind::Arith: {
        Value r = arith_eval(t.name, value(*t.args[0], env), value(*t.args[1], env));
        return r.is_int() && !ctx_.bounds.admits_int(r.as_int()) ? Value::undef() : r;
      }
      case TermKind::Herbrand:
      case TermKind::Tuple: {
        std::vector<Value> args;
        for (const auto& a : t.args) {
          Value v = value(*a, env);
          if (v.is_undef() || v.is_tuple()) return Value::undef();
          args.push_back(std::move(v));
        }
        if (t.kind == TermKind::Tuple) return Value::tuple(std::move(args));
        Value v = Value::symbol(t.name, std::move(args));
        return v.herbrand_depth() > ctx_.bounds.max_herbrand_depth ? Value::undef() : v;
      }
      default: throw std::logic_error("term outside the aggregate fragment: " + to_string(t));
    }
  }

  // {c : T |= body(c)} for a set name.
  template <class Fn>
  void satisfiers(const Term& s, Env& env, Fn&& fn) const {
    std::size_t n = s.bound.size();
    std::size_t base = env.size();
    const auto& dom = ctx_.domain;
    if (dom.empty()) return;
    for (std::size_t k = 0; k < n; ++k) env.push_back({s.bound[k], dom.front()});
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      for (std::size_t k = 0; k < n; ++k) env[base + k].value = dom[idx[k]];
      if (sat(*s.body, env)) {
        std::vector<Value> c;
        for (std::size_t k = 0; k < n; ++k) c.push_back(dom[idx[k]]);
        fn(c);
      }
      std::size_t k = n;
      bool done = true;
      while (k > 0) {
        --k;
        if (++idx[k] < dom.size()) {
          done = false;
          break;
        }
        idx[k] = 0;
      }
      if (done) break;
    }
    env.resize(base);
  }

  bool sat(const Formula& f, Env& env) const {
    switch (f.kind) {
      case FormulaKind::Bot: return false;
      case FormulaKind::Top: return true;
      case FormulaKind::And: return sat(*f.lhs, env) && sat(*f.rhs, env);
      case FormulaKind::Or: return sat(*f.lhs, env) || sat(*f.rhs, env);
      case FormulaKind::Implies: return !sat(*f.lhs, env) || sat(*f.rhs, env);
      case FormulaKind::Forall:
      case FormulaKind::Exists: throw std::logic_error("quantifier in a ground fragment formula");
      case FormulaKind::Pred:
      case FormulaKind::Eq: break;
    }
    const Term* agg = nullptr;
    if (is_set_atom(f, &agg)) {
      std::vector<Value> members;
      satisfiers(*agg->args[0], env, [&](std::vector<Value>& c) {
        members.push_back(Value::tuple(std::move(c)));
      });
      Value k = aggregate_eval(agg->name, Value::set(std::move(members)));
      if (!k.is_int() || !ctx_.bounds.admits_int(k.as_int())) return false;
      bool left = agg == f.args[0].get();
      Value n = value(left ? *f.args[1] : *f.args[0], env);
      if (n.is_undef()) return false;
      if (f.kind == FormulaKind::Eq) return k == n;
      return left ? relation_holds(f.name, k, n) : relation_holds(f.name, n, k);
    }
    std::vector<Value> vals;
    for (const auto& a : f.args) {
      Value v = value(*a, env);
      if (v.is_undef()) return false;
      vals.push_back(std::move(v));
    }
    if (f.kind == FormulaKind::Eq) return vals[0] == vals[1];
    if (f.builtin) return relation_holds(f.name, vals[0], vals[1]);
    return atoms_.holds(World::There, Atom{f.name, std::move(vals)});
  }

  FormulaPtr reduct(const Formula& f, Env& env) const {
    if (!sat(f, env)) return make_bot();
    switch (f.kind) {
      case FormulaKind::Top: return make_top();
      case FormulaKind::And: return conj(reduct(*f.lhs, env), reduct(*f.rhs, env));
      case FormulaKind::Or: {
        auto l = reduct(*f.lhs, env);
        auto r = reduct(*f.rhs, env);
        if (l->kind == FormulaKind::Top || r->kind == FormulaKind::Bot) return l;
        if (r->kind == FormulaKind::Top || l->kind == FormulaKind::Bot) return r;
        return make_or(l, r);
      }
      case FormulaKind::Implies: {
        auto l = reduct(*f.lhs, env);
        auto r = reduct(*f.rhs, env);
        if (l->kind == FormulaKind::Bot || r->kind == FormulaKind::Top) return make_top();
        if (l->kind == FormulaKind::Top) return r;
        return make_implies(l, r);
      }
      default: break;
    }
    const Term* agg = nullptr;
    if (is_set_atom(f, &agg)) {
      const Term& s = *agg->args[0];
      if (contains_set_atom(*s.body))
        throw std::logic_error("reduct of a nested set atom is not defined: " + to_string(f));
      FormulaPtr out = make_top();
      satisfiers(s, env, [&](std::vector<Value>& c) {
        Env inner = env;
        for (std::size_t k = 0; k < c.size(); ++k) inner.push_back({s.bound[k], c[k]});
        out = conj(out, reduct(*s.body, inner));
      });
      return out;
    }
    if (f.kind == FormulaKind::Eq || f.builtin) return make_top();
    std::vector<TermPtr> args;
    for (const auto& a : f.args) args.push_back(make_const(value(*a, env)));
    return make_pred(f.name, std::move(args));
  }

 private:
  static FormulaPtr conj(FormulaPtr l, FormulaPtr r) {
    if (l->kind == FormulaKind::Bot || r->kind == FormulaKind::Top) return l;
    if (r->kind == FormulaKind::Bot || l->kind == FormulaKind::Top) return r;
    return make_and(std::move(l), std::move(r));
  }

  static bool contains_set_atom(const Formula& f) {
    if (is_set_atom(f)) return true;
    return (f.lhs && contains_set_atom(*f.lhs)) || (f.rhs && contains_set_atom(*f.rhs));
  }

  const EvalContext& ctx_;
  const AtomOracle& atoms_;
};

}  // namespace

bool is_set_atom(const Formula& f, const Term** agg) {
  if (f.kind != FormulaKind::Eq && !(f.kind == FormulaKind::Pred && f.builtin)) return false;
  for (const auto& a : f.args) {
    if (a->kind == TermKind::Eval && a->aggregate) {
      if (agg) *agg = a.get();
      return true;
    }
  }
  return false;
}

GzCheck is_gz_theory(const Theory& th) {
  FragmentChecker checker;
  for (const auto& f : th.formulas) {
    const Formula* body = f.get();
    while (body->kind == FormulaKind::Forall) body = body->lhs.get();
    if (!checker.formula(*body, false)) return {false, checker.diagnostic};
  }
  return {};
}

bool cl_satisfies(const EvalContext& ctx, const std::set<Atom>& T, const Formula& phi) {
  AtomSetOracle oracle(T, T);
  Env env;
  return Classical(ctx, oracle).sat(phi, env);
}

FormulaPtr reduct(const EvalContext& ctx, const std::set<Atom>& T, const Formula& phi) {
  AtomSetOracle oracle(T, T);
  Env env;
  return Classical(ctx, oracle).reduct(phi, env);
}

std::vector<FormulaPtr> theory_reduct(const EvalContext& ctx, const GroundTheory& gt,
                                      const std::set<Atom>& T) {
  std::vector<FormulaPtr> out;
  AtomSetOracle oracle(T, T);
  Classical cl(ctx, oracle);
  for (const auto& gi : gt.instances) {
    Env env = gi.env;
    auto r = cl.reduct(*gi.formula, env);
    if (r->kind != FormulaKind::Top) out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<Atom>> gz_stable_models(const Theory& th, const DomainBounds& bounds,
                                                const GzOptions& opts) {
  auto check = is_gz_theory(th);
  if (!check.ok) throw InputError("not in the aggregate fragment: " + check.diagnostic);
  EvalContext ctx = make_context(th, bounds);
  GroundTheory gt = ground_theory(th, ctx.domain);
  return gz_stable_models(ctx, gt, opts);
}

std::vector<std::vector<Atom>> gz_stable_models(const EvalContext& ctx, const GroundTheory& gt,
                                                const GzOptions& opts) {
  auto check = is_gz_theory(*ctx.theory);
  if (!check.ok) throw InputError("not in the aggregate fragment: " + check.diagnostic);
  SearchSpace space = build_search_space(ctx, gt, opts.prune);
  std::size_t n = space.free_atoms.size();
  if (n > opts.max_free_bits)
    throw BoundsError("max_free_bits", std::to_string(n) + " free atoms");
  std::uint64_t total = std::uint64_t{1} << n;
  std::vector<std::uint64_t> found;

  auto is_stable = [&](std::uint64_t mask, MaskOracle& oracle, const Classical& cl) {
    if (space.inconsistent) return false;
    oracle.set(mask, mask);
    std::vector<FormulaPtr> red;
    for (const auto& f : space.instances) {
      Env env;
      if (!cl.sat(*f, env)) return false;
      auto r = cl.reduct(*f, env);
      if (r->kind != FormulaKind::Top) red.push_back(std::move(r));
    }
    // No proper subset (keeping the facts) may satisfy the reduct.
    for (std::uint64_t sub = (mask - 1) & mask;; sub = (sub - 1) & mask) {
      if (sub == mask) break;
      oracle.set(sub, sub);
      bool model = std::all_of(red.begin(), red.end(), [&](const FormulaPtr& r) {
        Env env;
        return cl.sat(*r, env);
      });
      if (model) return false;
      if (sub == 0) break;
    }
    return true;
  };

  auto run = [&](std::uint64_t begin, std::uint64_t step, std::vector<std::uint64_t>& out) {
    MaskOracle oracle(space);
    Classical cl(ctx, oracle);
    for (std::uint64_t m = begin; m < total; m += step)
      if (is_stable(m, oracle, cl)) out.push_back(m);
  };

#ifdef SETASP_HAVE_OPENMP
  if (opts.parallel && total > 64) {
#pragma omp parallel
    {
      std::vector<std::uint64_t> local;
      run(static_cast<std::uint64_t>(omp_get_thread_num()),
          static_cast<std::uint64_t>(omp_get_num_threads()), local);
#pragma omp critical
      found.insert(found.end(), local.begin(), local.end());
    }
  } else
#endif
  {
    run(0, 1, found);
  }
  std::vector<std::vector<Atom>> out;
  for (auto m : found) {
    auto atoms = space.atoms_of(m);
    out.emplace_back(atoms.begin(), atoms.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

CrossCheck cross_check(const Theory& th, const DomainBounds& bounds, bool parallel) {
  auto check = is_gz_theory(th);
  if (!check.ok) throw InputError("not in the aggregate fragment: " + check.diagnostic);
  EvalContext ctx = make_context(th, bounds);
  GroundTheory gt = ground_theory(th, ctx.domain);
  CrossCheck out;
  out.gz_models = gz_stable_models(ctx, gt, {true, parallel});
  SolveOptions so;
  so.parallel = parallel;
  for (auto& m : find_stable_models(ctx, gt, so).models) out.eq_models.push_back(std::move(m.atoms));
  return out;
}

}  // namespace setasp
