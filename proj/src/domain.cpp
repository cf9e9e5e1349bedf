#include "setasp/domain.hpp"

#include <algorithm>
#include <functional>

#include "setasp/errors.hpp"

namespace setasp {

bool DomainBounds::admits(const Value& v) const {
  switch (v.kind()) {
    case Value::Kind::Undef: return false;
    case Value::Kind::Int: return admits_int(v.as_int());
    case Value::Kind::Symbol:
      if (v.herbrand_depth() > max_herbrand_depth) return false;
      break;
    case Value::Kind::Tuple:
      if (static_cast<int>(v.size()) > max_tuple_arity) return false;
      break;
    case Value::Kind::Set:
      if (v.set_rank() > max_set_rank || static_cast<int>(v.size()) > max_set_card) return false;
      if (static_cast<int>(v.member_arity()) > max_tuple_arity) return false;
      break;
  }
  for (const auto& c : v.items())
    if (!admits(c)) return false;
  return true;
}

namespace {

void check_cap(std::size_t n, const DomainBounds& b, const char* bound, const char* what) {
  if (n > b.hard_cap)
    throw BoundsError(bound, std::string(what) + " would have " + std::to_string(n) +
                                 " elements, above the cap of " + std::to_string(b.hard_cap));
}

std::vector<Value> herbrand_universe(const Signature& sig, const DomainBounds& b, bool ints) {
  std::vector<Value> out;
  if (ints) {
    check_cap(static_cast<std::size_t>(b.max_int - b.min_int + 1), b, "max_int", "integer range");
    for (std::int64_t i = b.min_int; i <= b.max_int; ++i) out.push_back(Value::integer(i));
  }
  for (const auto& [name, arity] : sig.constructors)
    if (arity == 0) out.push_back(Value::symbol(name));
  for (int depth = 1; depth <= b.max_herbrand_depth; ++depth) {
    std::vector<Value> fresh;
    for (const auto& [name, arity] : sig.constructors) {
      if (arity == 0) continue;
      // Argument tuples over everything built so far; at least one argument of
      // the previous depth so each term is produced once.
      std::vector<Value> args(static_cast<std::size_t>(arity));
      std::function<void(int, bool)> rec = [&](int k, bool uses_frontier) {
        if (k == arity) {
          if (uses_frontier) {
            fresh.push_back(Value::symbol(name, args));
            check_cap(out.size() + fresh.size(), b, "max_herbrand_depth", "Herbrand universe");
          }
          return;
        }
        for (const auto& v : out) {
          args[static_cast<std::size_t>(k)] = v;
          rec(k + 1, uses_frontier || v.herbrand_depth() == depth - 1);
        }
      };
      rec(0, false);
    }
    sort_unique(fresh);
    out.insert(out.end(), fresh.begin(), fresh.end());
    sort_unique(out);
    if (fresh.empty()) break;
  }
  sort_unique(out);
  return out;
}

std::size_t binomial_sum(std::size_t n, int k_max, std::size_t cap) {
  std::size_t total = 0;
  std::size_t c = 1;
  for (int k = 0; k <= k_max && static_cast<std::size_t>(k) <= n; ++k) {
    if (k > 0) {
      c = c * (n - static_cast<std::size_t>(k) + 1) / static_cast<std::size_t>(k);
    }
    total += c;
    if (total > cap || c > cap) return cap + 1;
  }
  return total;
}

/// All sets of at most `card` same-arity tuples over `base`, for each arity in `arities`.
std::vector<Value> finite_sets(const std::vector<Value>& base, const std::vector<int>& arities,
                               const DomainBounds& b) {
  std::vector<Value> out{Value::set({})};
  for (int arity : arities) {
    std::size_t n_tuples = 1;
    for (int k = 0; k < arity; ++k) {
      n_tuples *= std::max<std::size_t>(base.size(), 1);
      if (n_tuples > b.hard_cap) check_cap(n_tuples, b, "max_tuple_arity", "tuple space");
    }
    check_cap(binomial_sum(n_tuples, b.max_set_card, b.hard_cap), b, "max_set_card", "set level");
    std::vector<Value> tuples;
    std::vector<Value> cur(static_cast<std::size_t>(arity));
    std::function<void(int)> rec = [&](int k) {
      if (k == arity) {
        tuples.push_back(Value::tuple(cur));
        return;
      }
      for (const auto& v : base) {
        cur[static_cast<std::size_t>(k)] = v;
        rec(k + 1);
      }
    };
    if (!base.empty()) rec(0);
    std::vector<Value> chosen;
    std::function<void(std::size_t)> pick = [&](std::size_t from) {
      if (!chosen.empty()) out.push_back(Value::set(chosen));
      if (static_cast<int>(chosen.size()) == b.max_set_card) return;
      for (std::size_t i = from; i < tuples.size(); ++i) {
        chosen.push_back(tuples[i]);
        pick(i + 1);
        chosen.pop_back();
      }
    };
    pick(0);
    check_cap(out.size(), b, "max_set_card", "set level");
  }
  return out;
}

struct SetUsage {
  bool needs_sets = false;
  std::vector<int> arities;
};

void scan(const Term& t, bool direct_agg_arg, SetUsage& u);

void scan(const Formula& f, SetUsage& u) {
  for (const auto& a : f.args) scan(*a, false, u);
  if (f.kind == FormulaKind::Pred && f.name == "in" && f.args[1]->kind == TermKind::Var)
    u.needs_sets = true;
  if (f.lhs) scan(*f.lhs, u);
  if (f.rhs) scan(*f.rhs, u);
}

void scan(const Term& t, bool direct_agg_arg, SetUsage& u) {
  bool set_valued = t.kind == TermKind::ExtSet || t.kind == TermKind::IntSet ||
                    t.kind == TermKind::SetOp || (t.kind == TermKind::Const && t.value.is_set());
  if (set_valued && !direct_agg_arg) u.needs_sets = true;
  if (direct_agg_arg && t.kind == TermKind::Var) u.needs_sets = true;
  if (t.kind == TermKind::IntSet) u.arities.push_back(static_cast<int>(t.args.size()));
  if (t.kind == TermKind::ExtSet && !t.args.empty())
    u.arities.push_back(t.args[0]->kind == TermKind::Tuple ? static_cast<int>(t.args[0]->args.size())
                                                           : 1);
  if (t.kind == TermKind::Const && t.value.is_set() && t.value.size() > 0)
    u.arities.push_back(static_cast<int>(t.value.member_arity()));
  for (const auto& a : t.args) scan(*a, t.kind == TermKind::Eval && t.aggregate, u);
  if (t.body) scan(*t.body, u);
}

bool mentions_integers(const Term& t);

bool mentions_integers(const Formula& f) {
  if (f.kind == FormulaKind::Pred && f.builtin && f.name != "in" && f.name != "!=") return true;
  for (const auto& a : f.args)
    if (mentions_integers(*a)) return true;
  return (f.lhs && mentions_integers(*f.lhs)) || (f.rhs && mentions_integers(*f.rhs));
}

bool value_has_int(const Value& v) {
  if (v.is_int()) return true;
  for (const auto& c : v.items())
    if (value_has_int(c)) return true;
  return false;
}

bool mentions_integers(const Term& t) {
  if (t.kind == TermKind::Arith || (t.kind == TermKind::Eval && t.aggregate)) return true;
  if (t.kind == TermKind::Const && value_has_int(t.value)) return true;
  for (const auto& a : t.args)
    if (mentions_integers(*a)) return true;
  return t.body && mentions_integers(*t.body);
}

}  // namespace

std::vector<Value> build_domain_level(const Signature& sig, const DomainBounds& bounds, int i,
                                      bool with_integers) {
  std::vector<Value> level = herbrand_universe(sig, bounds, with_integers);
  std::vector<int> arities;
  for (int a = 1; a <= bounds.max_tuple_arity; ++a) arities.push_back(a);
  for (int k = 0; k < i; ++k) {
    auto sets = finite_sets(level, arities, bounds);
    level.insert(level.end(), sets.begin(), sets.end());
    sort_unique(level);
    check_cap(level.size(), bounds, "max_set_rank", "domain level");
  }
  return level;
}

bool uses_integers(const Theory& th) {
  for (const auto& f : th.formulas)
    if (mentions_integers(*f)) return true;
  for (const auto& [name, range] : th.function_ranges)
    for (const auto& v : range)
      if (value_has_int(v)) return true;
  return false;
}

std::vector<Value> build_active_domain(const Theory& th, const DomainBounds& bounds) {
  bool ints = uses_integers(th);
  for (const auto& v : theory_constants(th)) {
    if (!bounds.admits(v)) {
      throw InputError("value " + v.to_string() +
                       " lies outside the domain bounds (see --min-int/--max-int/--max-depth/"
                       "--max-set-card/--max-arity)");
    }
  }
  if (bounds.full_domain) return build_domain_level(th.sig, bounds, bounds.max_set_rank, ints);

  std::vector<Value> dom = build_domain_level(th.sig, bounds, 0, ints);
  std::vector<Value> consts = theory_constants(th);
  dom.insert(dom.end(), consts.begin(), consts.end());
  sort_unique(dom);

  SetUsage usage;
  for (const auto& f : th.formulas) scan(*f, usage);
  if (usage.needs_sets && bounds.max_set_rank >= 1) {
    std::vector<Value> base;
    for (const auto& v : dom)
      if (!v.is_set()) base.push_back(v);
    auto& ar = usage.arities;
    if (ar.empty()) ar.push_back(1);
    std::sort(ar.begin(), ar.end());
    ar.erase(std::unique(ar.begin(), ar.end()), ar.end());
    ar.erase(std::remove_if(ar.begin(), ar.end(), [&](int a) { return a > bounds.max_tuple_arity; }),
             ar.end());
    auto sets = finite_sets(base, ar, bounds);
    dom.insert(dom.end(), sets.begin(), sets.end());
    sort_unique(dom);
  }
  check_cap(dom.size(), bounds, "max_set_card", "active domain");
  return dom;
}

}  // namespace setasp
