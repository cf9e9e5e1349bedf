#include "setasp/sqhtf.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

#include "setasp/builtins.hpp"
#include "setasp/errors.hpp"

namespace setasp {

namespace {

using FnMap = std::map<std::pair<std::string, std::vector<Value>>, Value>;

bool has_sets(const Term& t);

bool has_sets(const Formula& f) {
  for (const auto& a : f.args)
    if (has_sets(*a)) return true;
  return (f.lhs && has_sets(*f.lhs)) || (f.rhs && has_sets(*f.rhs));
}

bool has_sets(const Term& t) {
  if (t.kind == TermKind::IntSet || t.aggregate) return true;
  return std::any_of(t.args.begin(), t.args.end(), [](const TermPtr& a) { return has_sets(*a); });
}

// One HT interpretation <sigma_h, sigma_t, H, T> over explicit sets.
struct Interp {
  const FnMap* sigma[2];
  const std::set<Atom>* atoms[2];
};

class Sat {
 public:
  Sat(const DomainBounds& b, const std::vector<Value>& d) : bounds_(b), domain_(d) {}

  Value term(const Term& t, Env& env, const Interp& I, int w) const {
    switch (t.kind) {
      case TermKind::Var: return *lookup(env, t.name);
      case TermKind::Const: return t.value;
      case TermKind::Herbrand:
      case TermKind::Eval:
      case TermKind::Tuple:
      case TermKind::ExtSet: {
        std::vector<Value> args;
        for (const auto& a : t.args) {
          Value v = term(*a, env, I, w);
          if (v.is_undef()) return v;
          args.push_back(std::move(v));
        }
        if (t.kind == TermKind::Eval) {
          auto it = I.sigma[w]->find({t.name, args});
          return it == I.sigma[w]->end() ? Value::undef() : it->second;
        }
        try {
          if (t.kind == TermKind::Tuple) return Value::tuple(std::move(args));
          if (t.kind == TermKind::ExtSet) return Value::set(std::move(args));
        } catch (const std::invalid_argument&) {
          return Value::undef();
        }
        for (const auto& a : args)
          if (a.is_tuple()) return Value::undef();
        Value v = Value::symbol(t.name, std::move(args));
        return v.herbrand_depth() > bounds_.max_herbrand_depth ? Value::undef() : v;
      }
      case TermKind::Arith: {
        Value r = arith_eval(t.name, term(*t.args[0], env, I, w), term(*t.args[1], env, I, w));
        return r.is_int() && !bounds_.admits_int(r.as_int()) ? Value::undef() : r;
      }
      case TermKind::SetOp:
        return set_op_eval(t.name, term(*t.args[0], env, I, w), term(*t.args[1], env, I, w));
      case TermKind::IntSet: break;
    }
    throw std::logic_error("intensional set in a set-free theory");
  }

  bool sat(const Formula& f, Env& env, const Interp& I, int w) const {
    switch (f.kind) {
      case FormulaKind::Bot: return false;
      case FormulaKind::Top: return true;
      case FormulaKind::Pred:
      case FormulaKind::Eq: {
        std::vector<Value> vals;
        for (const auto& a : f.args) {
          Value v = term(*a, env, I, w);
          if (v.is_undef()) return false;
          vals.push_back(std::move(v));
        }
        if (f.kind == FormulaKind::Eq) return vals[0] == vals[1];
        if (f.builtin) return relation_holds(f.name, vals[0], vals[1]);
        return I.atoms[w]->count(Atom{f.name, std::move(vals)}) > 0;
      }
      case FormulaKind::And: return sat(*f.lhs, env, I, w) && sat(*f.rhs, env, I, w);
      case FormulaKind::Or: return sat(*f.lhs, env, I, w) || sat(*f.rhs, env, I, w);
      case FormulaKind::Implies:
        for (int v = w; v <= 1; ++v)
          if (sat(*f.lhs, env, I, v) && !sat(*f.rhs, env, I, v)) return false;
        return true;
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        bool all = f.kind == FormulaKind::Forall;
        env.push_back({f.name, Value()});
        bool result = all;
        for (const auto& d : domain_) {
          env.back().value = d;
          if (sat(*f.lhs, env, I, w) != all) {
            result = !all;
            break;
          }
        }
        env.pop_back();
        return result;
      }
    }
    return false;
  }

 private:
  const DomainBounds& bounds_;
  const std::vector<Value>& domain_;
};

std::vector<std::vector<Value>> tuple_space(const std::vector<Value>& domain, int arity, std::size_t cap) {
  std::vector<std::vector<Value>> out{{}};
  for (int i = 0; i < arity; ++i) {
    std::vector<std::vector<Value>> next;
    for (const auto& prefix : out)
      for (const auto& d : domain) {
        next.push_back(prefix);
        next.back().push_back(d);
        if (next.size() > cap) throw BoundsError("max_bits", "too many ground applications");
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<std::vector<Atom>> sqhtf_stable_models(const Theory& th, const DomainBounds& bounds,
                                                   std::size_t max_bits) {
  for (const auto& f : th.formulas)
    if (has_sets(*f)) throw InputError("intensional sets or aggregates are not supported here");
  std::vector<Value> domain = build_active_domain(th, bounds);

  std::vector<Atom> atoms;
  for (const auto& [pred, arity] : th.sig.predicates)
    for (auto& args : tuple_space(domain, arity, std::size_t{1} << max_bits))
      atoms.push_back({pred, std::move(args)});
  struct Slot {
    std::pair<std::string, std::vector<Value>> key;
    std::vector<Value> range;
  };
  std::vector<Slot> slots;
  for (const auto& [name, arity] : th.sig.functions) {
    auto range = th.function_ranges.find(name);
    if (range == th.function_ranges.end()) throw InputError("missing range for " + name);
    for (auto& args : tuple_space(domain, arity, std::size_t{1} << max_bits))
      slots.push_back({{name, std::move(args)}, range->second});
  }
  std::size_t combos = 1;
  for (const auto& s : slots) combos *= s.range.size() + 1;
  if (atoms.size() > max_bits || (combos << atoms.size()) > (std::size_t{1} << max_bits))
    throw BoundsError("max_bits", "candidate space too large for the reference enumerator");

  Sat sat(bounds, domain);
  auto models = [&](const Interp& I, int w) {
    for (const auto& f : th.formulas) {
      Env env;
      if (!sat.sat(*f, env, I, w)) return false;
    }
    return true;
  };

  std::set<std::vector<Atom>> found;
  for (std::size_t c = 0; c < combos; ++c) {
    FnMap sigma;
    std::size_t rest = c;
    for (const auto& s : slots) {
      std::size_t digit = rest % (s.range.size() + 1);
      rest /= s.range.size() + 1;
      if (digit) sigma[s.key] = s.range[digit - 1];
    }
    std::vector<std::pair<std::pair<std::string, std::vector<Value>>, Value>> defined(sigma.begin(),
                                                                                      sigma.end());
    for (std::size_t mask = 0; mask < (std::size_t{1} << atoms.size()); ++mask) {
      std::set<Atom> T;
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (mask >> i & 1u) T.insert(atoms[i]);
      Interp total{{&sigma, &sigma}, {&T, &T}};
      if (!models(total, 1)) continue;
      // Any strictly smaller <sigma_h, H> that is still a model?
      bool minimal = true;
      std::size_t width = static_cast<std::size_t>(std::popcount(mask)) + defined.size();
      std::vector<std::size_t> bits;
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (mask >> i & 1u) bits.push_back(i);
      for (std::size_t sub = 0; sub + 1 < (std::size_t{1} << width) && minimal; ++sub) {
        std::set<Atom> H;
        for (std::size_t i = 0; i < bits.size(); ++i)
          if (sub >> i & 1u) H.insert(atoms[bits[i]]);
        FnMap sigma_h;
        for (std::size_t j = 0; j < defined.size(); ++j)
          if (sub >> (bits.size() + j) & 1u) sigma_h.insert(defined[j]);
        Interp I{{&sigma_h, &sigma}, {&H, &T}};
        if (models(I, 0)) minimal = false;
      }
      if (minimal) found.insert(std::vector<Atom>(T.begin(), T.end()));
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace setasp
