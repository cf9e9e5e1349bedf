#include "setasp/syntax.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace setasp {

namespace {

const char* const kRelations[] = {"<=", ">=", "<", ">", "!=", "in"};
const char* const kAggregates[] = {"count", "sum", "max", "min"};

void add_free(std::vector<std::string>& out, const std::vector<std::string>& more) {
  for (const auto& v : more)
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

void remove_free(std::vector<std::string>& vs, const std::string& v) {
  vs.erase(std::remove(vs.begin(), vs.end(), v), vs.end());
}

std::shared_ptr<Term> new_term(TermKind kind, std::string name, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = kind;
  t->name = std::move(name);
  t->args = std::move(args);
  for (const auto& a : t->args) {
    t->rank = std::max(t->rank, a->rank);
    add_free(t->free, a->free);
  }
  return t;
}

bool all_const(const std::vector<TermPtr>& ts) {
  return std::all_of(ts.begin(), ts.end(),
                     [](const TermPtr& t) { return t->kind == TermKind::Const; });
}

std::shared_ptr<Formula> new_formula(FormulaKind kind) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  return f;
}

std::shared_ptr<Formula> new_binary(FormulaKind kind, FormulaPtr l, FormulaPtr r) {
  auto f = new_formula(kind);
  f->rank = std::max(l->rank, r->rank);
  f->free = l->free;
  add_free(f->free, r->free);
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

std::shared_ptr<Formula> new_atom(FormulaKind kind, std::string name, std::vector<TermPtr> args) {
  auto f = new_formula(kind);
  f->name = std::move(name);
  f->args = std::move(args);
  for (const auto& a : f->args) {
    f->rank = std::max(f->rank, a->rank);
    add_free(f->free, a->free);
  }
  return f;
}

}  // namespace

bool is_builtin_relation(std::string_view name) {
  return std::find(std::begin(kRelations), std::end(kRelations), name) != std::end(kRelations);
}

bool is_builtin_aggregate(std::string_view name) {
  return std::find(std::begin(kAggregates), std::end(kAggregates), name) != std::end(kAggregates);
}

TermPtr make_var(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Var;
  t->free.push_back(name);
  t->name = std::move(name);
  return t;
}

TermPtr make_const(Value v) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Const;
  t->value = std::move(v);
  return t;
}

TermPtr make_herbrand(std::string name, std::vector<TermPtr> args) {
  bool foldable = all_const(args);
  for (const auto& a : args)
    if (foldable && (a->value.is_tuple() || a->value.is_undef())) foldable = false;
  if (foldable) {
    std::vector<Value> vs;
    for (const auto& a : args) vs.push_back(a->value);
    return make_const(Value::symbol(std::move(name), std::move(vs)));
  }
  return new_term(TermKind::Herbrand, std::move(name), std::move(args));
}

TermPtr make_eval(std::string name, std::vector<TermPtr> args, bool aggregate) {
  auto t = new_term(TermKind::Eval, std::move(name), std::move(args));
  t->aggregate = aggregate;
  return t;
}

TermPtr make_ext_set(std::vector<TermPtr> elems) {
  if (all_const(elems)) {
    std::vector<Value> vs;
    for (const auto& e : elems) vs.push_back(e->value);
    bool same_arity = std::all_of(vs.begin(), vs.end(),
                                  [&](const Value& v) { return v.arity() == vs.front().arity(); });
    if (same_arity) return make_const(Value::set(std::move(vs)));
  }
  return new_term(TermKind::ExtSet, "", std::move(elems));
}

TermPtr make_int_set(std::vector<std::string> bound, std::vector<TermPtr> head, FormulaPtr body) {
  auto t = new_term(TermKind::IntSet, "", std::move(head));
  std::vector<std::string> inner = t->free;
  add_free(inner, body->free);
  for (std::size_t i = 0; i < bound.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (bound[i] == bound[j])
        throw std::invalid_argument("duplicate bound variable " + bound[i] + " in set");
    if (std::find(inner.begin(), inner.end(), bound[i]) == inner.end())
      throw std::invalid_argument("bound variable " + bound[i] + " does not occur in set");
  }
  t->rank = std::max(t->rank, body->rank + 1);
  t->free = std::move(inner);
  for (const auto& b : bound) remove_free(t->free, b);
  t->bound = std::move(bound);
  t->body = std::move(body);
  return t;
}

TermPtr make_arith(std::string op, TermPtr l, TermPtr r) {
  return new_term(TermKind::Arith, std::move(op), {std::move(l), std::move(r)});
}

TermPtr make_set_op(std::string op, TermPtr l, TermPtr r) {
  return new_term(TermKind::SetOp, std::move(op), {std::move(l), std::move(r)});
}

TermPtr make_tuple(std::vector<TermPtr> elems) {
  if (elems.size() == 1) return elems.front();
  if (all_const(elems) && std::none_of(elems.begin(), elems.end(), [](const TermPtr& e) {
        return e->value.is_tuple() || e->value.is_undef();
      })) {
    std::vector<Value> vs;
    for (const auto& e : elems) vs.push_back(e->value);
    return make_const(Value::tuple(std::move(vs)));
  }
  return new_term(TermKind::Tuple, "", std::move(elems));
}

FormulaPtr make_bot() {
  static const FormulaPtr f = new_formula(FormulaKind::Bot);
  return f;
}

FormulaPtr make_top() {
  static const FormulaPtr f = new_formula(FormulaKind::Top);
  return f;
}

FormulaPtr make_pred(std::string name, std::vector<TermPtr> args) {
  bool builtin = is_builtin_relation(name);
  auto f = new_atom(FormulaKind::Pred, std::move(name), std::move(args));
  f->builtin = builtin;
  return f;
}

FormulaPtr make_eq(TermPtr l, TermPtr r) {
  return new_atom(FormulaKind::Eq, "=", {std::move(l), std::move(r)});
}

FormulaPtr make_and(FormulaPtr l, FormulaPtr r) {
  return new_binary(FormulaKind::And, std::move(l), std::move(r));
}

FormulaPtr make_or(FormulaPtr l, FormulaPtr r) {
  return new_binary(FormulaKind::Or, std::move(l), std::move(r));
}

FormulaPtr make_implies(FormulaPtr l, FormulaPtr r) {
  return new_binary(FormulaKind::Implies, std::move(l), std::move(r));
}

FormulaPtr make_not(FormulaPtr f) { return make_implies(std::move(f), make_bot()); }

namespace {
FormulaPtr make_quant(FormulaKind kind, std::string var, FormulaPtr body) {
  auto f = new_formula(kind);
  f->rank = body->rank;
  f->free = body->free;
  remove_free(f->free, var);
  f->name = std::move(var);
  f->lhs = std::move(body);
  return f;
}
}  // namespace

FormulaPtr make_forall(std::string var, FormulaPtr body) {
  return make_quant(FormulaKind::Forall, std::move(var), std::move(body));
}

FormulaPtr make_exists(std::string var, FormulaPtr body) {
  return make_quant(FormulaKind::Exists, std::move(var), std::move(body));
}

FormulaPtr make_conj(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return make_top();
  FormulaPtr out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = make_and(out, fs[i]);
  return out;
}

FormulaPtr make_disj(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return make_bot();
  FormulaPtr out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = make_or(out, fs[i]);
  return out;
}

FormulaPtr close_universally(FormulaPtr f) {
  auto vars = f->free;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) f = make_forall(*it, f);
  return f;
}

const Value* lookup(const Env& env, std::string_view name) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->name == name) return &it->value;
  return nullptr;
}

namespace {

bool touches(const std::vector<std::string>& free, const Env& env) {
  for (const auto& v : free)
    if (lookup(env, v)) return true;
  return false;
}

Env shadow(const Env& env, const std::vector<std::string>& names) {
  Env out;
  for (const auto& b : env)
    if (std::find(names.begin(), names.end(), b.name) == names.end()) out.push_back(b);
  return out;
}

std::vector<TermPtr> substitute_all(const std::vector<TermPtr>& ts, const Env& env) {
  std::vector<TermPtr> out;
  out.reserve(ts.size());
  for (const auto& t : ts) out.push_back(substitute(t, env));
  return out;
}

}  // namespace

TermPtr substitute(const TermPtr& t, const Env& env) {
  if (!touches(t->free, env)) return t;
  switch (t->kind) {
    case TermKind::Var: return make_const(*lookup(env, t->name));
    case TermKind::Const: return t;
    case TermKind::Herbrand: return make_herbrand(t->name, substitute_all(t->args, env));
    case TermKind::Eval: return make_eval(t->name, substitute_all(t->args, env), t->aggregate);
    case TermKind::ExtSet: return make_ext_set(substitute_all(t->args, env));
    case TermKind::IntSet: {
      Env inner = shadow(env, t->bound);
      return make_int_set(t->bound, substitute_all(t->args, inner), substitute(t->body, inner));
    }
    case TermKind::Arith:
      return make_arith(t->name, substitute(t->args[0], env), substitute(t->args[1], env));
    case TermKind::SetOp:
      return make_set_op(t->name, substitute(t->args[0], env), substitute(t->args[1], env));
    case TermKind::Tuple: return make_tuple(substitute_all(t->args, env));
  }
  return t;
}

FormulaPtr substitute(const FormulaPtr& f, const Env& env) {
  if (!touches(f->free, env)) return f;
  switch (f->kind) {
    case FormulaKind::Bot:
    case FormulaKind::Top: return f;
    case FormulaKind::Pred: return make_pred(f->name, substitute_all(f->args, env));
    case FormulaKind::Eq: return make_eq(substitute(f->args[0], env), substitute(f->args[1], env));
    case FormulaKind::And: return make_and(substitute(f->lhs, env), substitute(f->rhs, env));
    case FormulaKind::Or: return make_or(substitute(f->lhs, env), substitute(f->rhs, env));
    case FormulaKind::Implies:
      return make_implies(substitute(f->lhs, env), substitute(f->rhs, env));
    case FormulaKind::Forall:
      return make_forall(f->name, substitute(f->lhs, shadow(env, {f->name})));
    case FormulaKind::Exists:
      return make_exists(f->name, substitute(f->lhs, shadow(env, {f->name})));
  }
  return f;
}

bool same_term(const Term& a, const Term& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.name != b.name || a.aggregate != b.aggregate || a.bound != b.bound ||
      a.args.size() != b.args.size())
    return false;
  if (a.kind == TermKind::Const && a.value != b.value) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same_term(*a.args[i], *b.args[i])) return false;
  if (a.kind == TermKind::IntSet) return same_formula(*a.body, *b.body);
  return true;
}

bool same_formula(const Formula& a, const Formula& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same_term(*a.args[i], *b.args[i])) return false;
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs) ||
      static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs))
    return false;
  if (a.lhs && !same_formula(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !same_formula(*a.rhs, *b.rhs)) return false;
  return true;
}

namespace {

void collect_values(const Term& t, std::vector<Value>& out);

void collect_values(const Formula& f, std::vector<Value>& out) {
  for (const auto& a : f.args) collect_values(*a, out);
  if (f.lhs) collect_values(*f.lhs, out);
  if (f.rhs) collect_values(*f.rhs, out);
}

void collect_values(const Term& t, std::vector<Value>& out) {
  if (t.kind == TermKind::Const) out.push_back(t.value);
  for (const auto& a : t.args) collect_values(*a, out);
  if (t.body) collect_values(*t.body, out);
}

}  // namespace

std::vector<Value> theory_constants(const Theory& th) {
  std::vector<Value> out;
  for (const auto& f : th.formulas) collect_values(*f, out);
  for (const auto& [name, range] : th.function_ranges) out.insert(out.end(), range.begin(), range.end());
  sort_unique(out);
  return out;
}

}  // namespace setasp
