#include "setasp/interpretation.hpp"

#include <algorithm>
#include <stdexcept>

#include "setasp/builtins.hpp"
#include "setasp/printer.hpp"

namespace setasp {

std::strong_ordering operator<=>(const FnKey& a, const FnKey& b) {
  if (auto c = a.name <=> b.name; c != 0) return c;
  return std::lexicographical_compare_three_way(a.args.begin(), a.args.end(), b.args.begin(),
                                                b.args.end());
}

std::string FnKey::to_string() const {
  std::string out = name;
  if (!args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ',';
      out += args[i].to_string();
    }
    out += ')';
  }
  return out;
}

Value Assignment::fact(const FnKey& k) const {
  auto it = facts.find(k);
  return it == facts.end() ? Value::undef() : it->second;
}

namespace {

template <class Map>
bool map_leq(const Map& a, const Map& b) {
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it == b.end() || it->second != v) return false;
  }
  return true;
}

}  // namespace

bool assignment_leq(const Assignment& s1, const Assignment& s2) {
  return map_leq(s1.facts, s2.facts) && map_leq(s1.derived, s2.derived);
}

HTInterpretation HTInterpretation::total(Assignment sigma, std::set<Atom> atoms) {
  HTInterpretation i;
  i.sigma_h = sigma;
  i.sigma_t = std::move(sigma);
  i.atoms_h = atoms;
  i.atoms_t = std::move(atoms);
  return i;
}

bool HTInterpretation::well_formed() const {
  return std::includes(atoms_t.begin(), atoms_t.end(), atoms_h.begin(), atoms_h.end()) &&
         assignment_leq(sigma_h, sigma_t);
}

bool interp_leq(const HTInterpretation& i1, const HTInterpretation& i2) {
  return i1.atoms_t == i2.atoms_t && i1.sigma_t == i2.sigma_t &&
         std::includes(i2.atoms_h.begin(), i2.atoms_h.end(), i1.atoms_h.begin(),
                       i1.atoms_h.end()) &&
         assignment_leq(i1.sigma_h, i2.sigma_h);
}

EvalContext make_context(const Theory& th, const DomainBounds& bounds) {
  return EvalContext{&th, bounds, build_active_domain(th, bounds)};
}

std::string ground_text(const Term& t, const Env& env) {
  TermPtr alias(TermPtr(), &t);
  return to_string(*substitute(alias, env));
}

Evaluator::Evaluator(const EvalContext& ctx, const AtomOracle& atoms, const Assignment& sigma_h,
                     const Assignment& sigma_t, SetMode mode)
    : ctx_(&ctx), atoms_(&atoms), sigma_{&sigma_h, &sigma_t}, mode_(mode) {}

void Evaluator::reset() {
  memo_[0].clear();
  memo_[1].clear();
}

void Evaluator::reset_here() { memo_[0].clear(); }

std::size_t Evaluator::MemoHash::operator()(const MemoKey& k) const {
  std::size_t h = std::hash<const void*>()(k.term);
  for (const auto& v : k.env) h = h * 1000003u ^ v.hash();
  return h;
}

namespace {

const Value& bound_value(const Env& env, std::string_view name) {
  const Value* v = lookup(env, name);
  if (!v) throw std::logic_error("unbound variable " + std::string(name));
  return *v;
}

// Keeps bindings pushed for the lifetime of the guard.
struct EnvScope {
  Env& env;
  std::size_t size;
  explicit EnvScope(Env& e) : env(e), size(e.size()) {}
  ~EnvScope() { env.resize(size); }
};

// Calls fn once per assignment of domain values to names; fn returns false to stop.
template <class Fn>
bool for_each_binding(Env& env, const std::vector<std::string>& names,
                      const std::vector<Value>& domain, Fn&& fn) {
  EnvScope scope(env);
  if (names.empty()) return fn();
  if (domain.empty()) return true;
  for (const auto& n : names) env.push_back({n, domain.front()});
  std::vector<std::size_t> idx(names.size(), 0);
  while (true) {
    for (std::size_t k = 0; k < names.size(); ++k) env[scope.size + k].value = domain[idx[k]];
    if (!fn()) return false;
    std::size_t k = names.size();
    while (k > 0) {
      --k;
      if (++idx[k] < domain.size()) break;
      idx[k] = 0;
      if (k == 0) return true;
    }
  }
}

}  // namespace

Value Evaluator::eval_tuple(const std::vector<TermPtr>& elems, Env& env, World w) {
  std::vector<Value> vals;
  vals.reserve(elems.size());
  for (const auto& e : elems) {
    Value v = eval(*e, env, w);
    if (v.is_undef() || v.is_tuple()) return Value::undef();
    vals.push_back(std::move(v));
  }
  return Value::tuple(std::move(vals));
}

Value Evaluator::eval(const Term& t, Env& env, World w) {
  const DomainBounds& b = ctx_->bounds;
  switch (t.kind) {
    case TermKind::Var: return bound_value(env, t.name);
    case TermKind::Const: return t.value;
    case TermKind::Herbrand: {
      std::vector<Value> args;
      for (const auto& a : t.args) {
        Value v = eval(*a, env, w);
        if (v.is_undef() || v.is_tuple()) return Value::undef();
        args.push_back(std::move(v));
      }
      Value v = Value::symbol(t.name, std::move(args));
      return v.herbrand_depth() > b.max_herbrand_depth ? Value::undef() : v;
    }
    case TermKind::Eval: {
      if (t.aggregate) {
        Value r = aggregate_eval(t.name, eval(*t.args[0], env, w));
        if (r.is_int() && !b.admits_int(r.as_int())) return Value::undef();
        return r;
      }
      FnKey key{t.name, {}};
      for (const auto& a : t.args) {
        Value v = eval(*a, env, w);
        if (v.is_undef()) return v;
        key.args.push_back(std::move(v));
      }
      return sigma_[static_cast<int>(w)]->fact(key);
    }
    case TermKind::ExtSet: {
      std::vector<Value> members;
      for (const auto& e : t.args) {
        Value v = eval(*e, env, w);
        if (v.is_undef()) return v;
        members.push_back(std::move(v));
      }
      try {
        return Value::set(std::move(members));
      } catch (const std::invalid_argument&) {
        return Value::undef();
      }
    }
    case TermKind::IntSet: return set_value(t, env, w);
    case TermKind::Arith: {
      Value r = arith_eval(t.name, eval(*t.args[0], env, w), eval(*t.args[1], env, w));
      if (r.is_int() && !b.admits_int(r.as_int())) return Value::undef();
      return r;
    }
    case TermKind::SetOp:
      return set_op_eval(t.name, eval(*t.args[0], env, w), eval(*t.args[1], env, w));
    case TermKind::Tuple: return eval_tuple(t.args, env, w);
  }
  return Value::undef();
}

Value Evaluator::ext(const Term& set, Env& env, World w) {
  std::vector<Value> members;
  bool undefined = false;
  for_each_binding(env, set.bound, ctx_->domain, [&] {
    if (!sat(*set.body, env, w)) return true;
    Value v = eval_tuple(set.args, env, w);
    if (v.is_undef()) {
      undefined = true;
      return false;
    }
    members.push_back(std::move(v));
    return true;
  });
  if (undefined) return Value::undef();
  try {
    return Value::set(std::move(members));
  } catch (const std::invalid_argument&) {
    return Value::undef();
  }
}

Value Evaluator::set_value(const Term& t, Env& env, World w) {
  int wi = static_cast<int>(w);
  if (mode_ == SetMode::Explicit) {
    const auto& derived = sigma_[wi]->derived;
    auto it = derived.find(ground_text(t, env));
    return it == derived.end() ? Value::undef() : it->second;
  }
  MemoKey key{&t, {}};
  key.env.reserve(t.free.size());
  for (const auto& v : t.free) key.env.push_back(bound_value(env, v));
  if (auto it = memo_[wi].find(key); it != memo_[wi].end()) return it->second;
  Value result = ext(t, env, w);
  if (w == World::Here && !result.is_undef() && result != set_value(t, env, World::There))
    result = Value::undef();
  memo_[wi].emplace(std::move(key), result);
  return result;
}

bool Evaluator::sat(const Formula& f, Env& env, World w) {
  switch (f.kind) {
    case FormulaKind::Bot: return false;
    case FormulaKind::Top: return true;
    case FormulaKind::Pred: {
      if (f.builtin) {
        Value l = eval(*f.args[0], env, w);
        if (l.is_undef()) return false;
        Value r = eval(*f.args[1], env, w);
        return !r.is_undef() && relation_holds(f.name, l, r);
      }
      Atom a{f.name, {}};
      a.args.reserve(f.args.size());
      for (const auto& t : f.args) {
        Value v = eval(*t, env, w);
        if (v.is_undef()) return false;
        a.args.push_back(std::move(v));
      }
      return atoms_->holds(w, a);
    }
    case FormulaKind::Eq: {
      Value l = eval(*f.args[0], env, w);
      if (l.is_undef()) return false;
      return l == eval(*f.args[1], env, w);
    }
    case FormulaKind::And: return sat(*f.lhs, env, w) && sat(*f.rhs, env, w);
    case FormulaKind::Or: return sat(*f.lhs, env, w) || sat(*f.rhs, env, w);
    case FormulaKind::Implies:
      if (w == World::Here && sat(*f.lhs, env, World::Here) && !sat(*f.rhs, env, World::Here))
        return false;
      return !sat(*f.lhs, env, World::There) || sat(*f.rhs, env, World::There);
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      bool universal = f.kind == FormulaKind::Forall;
      bool found = false;
      std::vector<std::string> names{f.name};
      for_each_binding(env, names, ctx_->domain, [&] {
        if (sat(*f.lhs, env, w) != universal) {
          found = true;
          return false;
        }
        return true;
      });
      return universal ? !found : found;
    }
  }
  return false;
}

namespace {

// Records closure values of every set and aggregate occurrence.
class ClosureWalker {
 public:
  ClosureWalker(const EvalContext& ctx, Evaluator& ev, HTInterpretation& out)
      : ctx_(ctx), ev_(ev), out_(out) {}

  void formula(const Formula& f, Env& env) {
    for (const auto& t : f.args) term(*t, env);
    switch (f.kind) {
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Implies:
        formula(*f.lhs, env);
        formula(*f.rhs, env);
        break;
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        std::vector<std::string> names{f.name};
        for_each_binding(env, names, ctx_.domain, [&] {
          formula(*f.lhs, env);
          return true;
        });
        break;
      }
      default: break;
    }
  }

  void term(const Term& t, Env& env) {
    if (t.kind == TermKind::Var || t.kind == TermKind::Const) return;
    if (t.kind == TermKind::IntSet || t.aggregate) record(t, env);
    if (t.kind == TermKind::IntSet) {
      for_each_binding(env, t.bound, ctx_.domain, [&] {
        for (const auto& a : t.args) term(*a, env);
        formula(*t.body, env);
        return true;
      });
      return;
    }
    for (const auto& a : t.args) term(*a, env);
  }

 private:
  void record(const Term& t, Env& env) {
    std::string key = ground_text(t, env);
    // sum({2,3} \ {3}) is filed as sum({2}) when both worlds agree on the argument.
    if (t.aggregate && t.args.size() == 1 && t.args[0]->kind != TermKind::IntSet) {
      Value at = ev_.eval(*t.args[0], env, World::There);
      if (!at.is_undef() && at == ev_.eval(*t.args[0], env, World::Here))
        key = t.name + "(" + at.to_string() + ")";
    }
    if (!seen_.insert(key).second) return;
    Value vt = ev_.eval(t, env, World::There);
    Value vh = ev_.eval(t, env, World::Here);
    if (!vt.is_undef()) out_.sigma_t.derived[key] = vt;
    if (!vh.is_undef()) out_.sigma_h.derived[key] = vh;
  }

  const EvalContext& ctx_;
  Evaluator& ev_;
  HTInterpretation& out_;
  std::set<std::string> seen_;
};

}  // namespace

HTInterpretation coherence_closure(const EvalContext& ctx, const HTInterpretation& interp,
                                   const GroundTheory& gt) {
  HTInterpretation out = interp;
  out.sigma_h.derived.clear();
  out.sigma_t.derived.clear();
  AtomSetOracle oracle(interp.atoms_h, interp.atoms_t);
  Evaluator ev(ctx, oracle, interp.sigma_h, interp.sigma_t);
  ClosureWalker walker(ctx, ev, out);
  for (const auto& gi : gt.instances) {
    Env env = gi.env;
    walker.formula(*gi.formula, env);
  }
  return out;
}

bool is_coherent(const EvalContext& ctx, const HTInterpretation& interp, const GroundTheory& gt) {
  return coherence_closure(ctx, interp, gt) == interp;
}

bool satisfies(const EvalContext& ctx, const HTInterpretation& interp, World w, const Formula& phi,
               Env env) {
  AtomSetOracle oracle(interp.atoms_h, interp.atoms_t);
  Evaluator ev(ctx, oracle, interp.sigma_h, interp.sigma_t, Evaluator::SetMode::Explicit);
  return ev.sat(phi, env, w);
}

bool models(const EvalContext& ctx, const HTInterpretation& interp, const GroundTheory& gt) {
  if (!interp.well_formed() || !is_coherent(ctx, interp, gt)) return false;
  AtomSetOracle oracle(interp.atoms_h, interp.atoms_t);
  Evaluator ev(ctx, oracle, interp.sigma_h, interp.sigma_t, Evaluator::SetMode::Explicit);
  for (const auto& gi : gt.instances) {
    Env env = gi.env;
    if (!ev.sat(*gi.formula, env, World::Here)) return false;
  }
  return true;
}

}  // namespace setasp
