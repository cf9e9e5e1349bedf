#include "setasp/simplify.hpp"

#include "setasp/builtins.hpp"

namespace setasp {

namespace {

class NoAtoms : public AtomOracle {
 public:
  bool holds(World, const Atom&) const override { return false; }
};

bool is_var(const Term& t, std::string_view name) {
  return t.kind == TermKind::Var && t.name == name;
}

FormulaPtr simplify_atom(const FormulaPtr& f, const EvalContext& ctx, const AtomScope& scope) {
  std::vector<TermPtr> args;
  std::vector<Value> values;
  bool all_static = true;
  bool any_undef = false;
  bool changed = false;
  for (const auto& a : f->args) {
    auto v = static_value(*a, ctx);
    if (!v) {
      all_static = false;
      args.push_back(a);
      continue;
    }
    if (v->is_undef()) {
      any_undef = true;
      args.push_back(a);
      continue;
    }
    if (a->kind != TermKind::Const) changed = true;
    args.push_back(a->kind == TermKind::Const ? a : make_const(*v));
    values.push_back(*v);
  }
  // Every atom over an undefined argument is false (strictness).
  if (any_undef) return make_bot();
  if (all_static) {
    if (f->kind == FormulaKind::Eq) return values[0] == values[1] ? make_top() : make_bot();
    if (f->builtin)
      return relation_holds(f->name, values[0], values[1]) ? make_top() : make_bot();
    Atom atom{f->name, values};
    if (scope.facts && scope.facts->count(atom)) return make_top();
    if (scope.universe && !scope.universe->count(atom)) return make_bot();
  }
  // An aggregate only ever takes integer values within the bounds.
  if (f->kind == FormulaKind::Eq && values.size() == 1) {
    const Term& other = args[0]->kind == TermKind::Const ? *args[1] : *args[0];
    if (other.kind == TermKind::Eval && other.aggregate &&
        (!values[0].is_int() || !ctx.bounds.admits_int(values[0].as_int())))
      return make_bot();
    // v = {X : body} needs body[X := e] to be satisfiable for every e in v.
    if (other.kind == TermKind::IntSet && other.free.empty() && other.bound.size() == 1 &&
        other.args.size() == 1 && is_var(*other.args[0], other.bound[0])) {
      if (!values[0].is_set()) return make_bot();
      for (const Value& e : values[0].items()) {
        auto b = simplify(substitute(other.body, Env{{other.bound[0], e}}), ctx, scope);
        if (b->kind == FormulaKind::Bot) return make_bot();
      }
    }
  }
  if (!changed) return f;
  if (f->kind == FormulaKind::Eq) return make_eq(args[0], args[1]);
  return make_pred(f->name, std::move(args));
}

}  // namespace

bool is_static(const Term& t) {
  if (!t.free.empty()) return false;
  switch (t.kind) {
    case TermKind::Var:
    case TermKind::IntSet: return false;
    case TermKind::Const: return true;
    case TermKind::Eval:
      if (!t.aggregate) return false;
      break;
    default: break;
  }
  for (const auto& a : t.args)
    if (!is_static(*a)) return false;
  return true;
}

std::optional<Value> static_value(const Term& t, const EvalContext& ctx) {
  if (t.kind == TermKind::Const) return t.value;
  if (!is_static(t)) return std::nullopt;
  static const NoAtoms none;
  static const Assignment empty;
  Evaluator ev(ctx, none, empty, empty);
  Env env;
  return ev.eval(t, env, World::There);
}

FormulaPtr simplify(const FormulaPtr& f, const EvalContext& ctx, const AtomScope& scope) {
  switch (f->kind) {
    case FormulaKind::Bot:
    case FormulaKind::Top: return f;
    case FormulaKind::Pred:
    case FormulaKind::Eq: return simplify_atom(f, ctx, scope);
    case FormulaKind::And: {
      auto l = simplify(f->lhs, ctx, scope);
      if (l->kind == FormulaKind::Bot) return l;
      auto r = simplify(f->rhs, ctx, scope);
      if (r->kind == FormulaKind::Bot || l->kind == FormulaKind::Top) return r;
      if (r->kind == FormulaKind::Top) return l;
      return l == f->lhs && r == f->rhs ? f : make_and(l, r);
    }
    case FormulaKind::Or: {
      auto l = simplify(f->lhs, ctx, scope);
      if (l->kind == FormulaKind::Top) return l;
      auto r = simplify(f->rhs, ctx, scope);
      if (r->kind == FormulaKind::Top || l->kind == FormulaKind::Bot) return r;
      if (r->kind == FormulaKind::Bot) return l;
      return l == f->lhs && r == f->rhs ? f : make_or(l, r);
    }
    case FormulaKind::Implies: {
      auto l = simplify(f->lhs, ctx, scope);
      if (l->kind == FormulaKind::Bot) return make_top();
      auto r = simplify(f->rhs, ctx, scope);
      if (r->kind == FormulaKind::Top) return r;
      if (l->kind == FormulaKind::Top) return r;
      return l == f->lhs && r == f->rhs ? f : make_implies(l, r);
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      auto body = f->lhs;
      if (f->kind == FormulaKind::Exists) {
        // exists x (x = v and psi)  ~>  psi[v]
        const Formula* eq = body.get();
        FormulaPtr rest = make_top();
        if (body->kind == FormulaKind::And) {
          eq = body->lhs.get();
          rest = body->rhs;
        }
        if (eq->kind == FormulaKind::Eq) {
          const TermPtr* other = nullptr;
          if (is_var(*eq->args[0], f->name)) other = &eq->args[1];
          else if (is_var(*eq->args[1], f->name)) other = &eq->args[0];
          if (other) {
            auto v = static_value(**other, ctx);
            if (v && v->is_undef()) return make_bot();
            if (v && ctx.bounds.admits(*v) &&
                std::find(ctx.domain.begin(), ctx.domain.end(), *v) != ctx.domain.end())
              return simplify(substitute(rest, Env{{f->name, *v}}), ctx, scope);
          }
        }
      }
      auto b = simplify(body, ctx, scope);
      if (b->kind == FormulaKind::Top || b->kind == FormulaKind::Bot) {
        if (!ctx.domain.empty()) return b;
      }
      if (b->free.empty() || std::find(b->free.begin(), b->free.end(), f->name) == b->free.end()) {
        if (!ctx.domain.empty()) return b;
      }
      if (b == body) return f;
      return f->kind == FormulaKind::Forall ? make_forall(f->name, b) : make_exists(f->name, b);
    }
  }
  return f;
}

}  // namespace setasp
