#include "setasp/transform.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "setasp/errors.hpp"

namespace setasp {

std::string AtomSelector::to_string() const {
  return std::to_string(formula) + ":" + std::to_string(atom) + ":" + std::to_string(arg);
}

AtomSelector parse_selector(const std::string& text) {
  AtomSelector s;
  char c1 = 0;
  char c2 = 0;
  std::istringstream in(text);
  if (!(in >> s.formula >> c1 >> s.atom >> c2 >> s.arg) || c1 != ':' || c2 != ':' ||
      in.peek() != std::char_traits<char>::eof())
    throw InputError("selector must look like FORMULA:ATOM:ARG, got '" + text + "'");
  return s;
}

namespace {

bool tuple_arg(const Term& t) {
  return t.kind == TermKind::Tuple || (t.kind == TermKind::Const && t.value.is_tuple());
}

void collect_names(const Formula& f, std::set<std::string>& out);

void collect_names(const Term& t, std::set<std::string>& out) {
  if (t.kind == TermKind::Var) out.insert(t.name);
  out.insert(t.bound.begin(), t.bound.end());
  for (const auto& a : t.args) collect_names(*a, out);
  if (t.body) collect_names(*t.body, out);
}

void collect_names(const Formula& f, std::set<std::string>& out) {
  if (f.kind == FormulaKind::Forall || f.kind == FormulaKind::Exists) out.insert(f.name);
  for (const auto& a : f.args) collect_names(*a, out);
  if (f.lhs) collect_names(*f.lhs, out);
  if (f.rhs) collect_names(*f.rhs, out);
}

// Pre-order walk over predicate atoms that rebuilds the formula, rewriting
// the selected positions of the current formula.
class Rewriter {
 public:
  Rewriter(const std::map<std::size_t, std::set<std::size_t>>& selected,
           std::set<std::string> used)
      : selected_(selected), used_(std::move(used)) {}

  std::vector<std::pair<std::size_t, std::size_t>> positions;  // atom, arg (eligible)
  std::set<std::pair<std::size_t, std::size_t>> applied;

  FormulaPtr formula(const FormulaPtr& f) {
    switch (f->kind) {
      case FormulaKind::Bot:
      case FormulaKind::Top: return f;
      case FormulaKind::Pred: return atom(*f);
      case FormulaKind::Eq: return make_eq(term(f->args[0]), term(f->args[1]));
      case FormulaKind::And: return make_and(formula(f->lhs), formula(f->rhs));
      case FormulaKind::Or: return make_or(formula(f->lhs), formula(f->rhs));
      case FormulaKind::Implies: return make_implies(formula(f->lhs), formula(f->rhs));
      case FormulaKind::Forall: return make_forall(f->name, formula(f->lhs));
      case FormulaKind::Exists: return make_exists(f->name, formula(f->lhs));
    }
    return f;
  }

 private:
  FormulaPtr atom(const Formula& f) {
    std::size_t index = counter_++;
    for (std::size_t i = 0; i < f.args.size(); ++i)
      if (!tuple_arg(*f.args[i])) positions.emplace_back(index, i);
    std::vector<TermPtr> args;
    for (const auto& a : f.args) args.push_back(term(a));
    auto sel = selected_.find(index);
    if (sel == selected_.end()) return make_pred(f.name, std::move(args));
    std::vector<std::pair<std::string, TermPtr>> intro;
    for (auto i : sel->second) {
      if (i >= args.size() || tuple_arg(*f.args[i])) continue;
      applied.emplace(index, i);
      std::string v = fresh();
      intro.emplace_back(v, args[i]);
      args[i] = make_var(v);
    }
    FormulaPtr out = make_pred(f.name, std::move(args));
    for (auto it = intro.rbegin(); it != intro.rend(); ++it)
      out = make_exists(it->first, make_and(make_eq(make_var(it->first), it->second), out));
    return out;
  }

  TermPtr term(const TermPtr& t) {
    switch (t->kind) {
      case TermKind::Var:
      case TermKind::Const: return t;
      case TermKind::Herbrand: return make_herbrand(t->name, terms(t->args));
      case TermKind::Eval: return make_eval(t->name, terms(t->args), t->aggregate);
      case TermKind::ExtSet: return make_ext_set(terms(t->args));
      case TermKind::IntSet: {
        auto head = terms(t->args);
        return make_int_set(t->bound, std::move(head), formula(t->body));
      }
      case TermKind::Arith: return make_arith(t->name, term(t->args[0]), term(t->args[1]));
      case TermKind::SetOp: return make_set_op(t->name, term(t->args[0]), term(t->args[1]));
      case TermKind::Tuple: return make_tuple(terms(t->args));
    }
    return t;
  }

  std::vector<TermPtr> terms(const std::vector<TermPtr>& ts) {
    std::vector<TermPtr> out;
    for (const auto& t : ts) out.push_back(term(t));
    return out;
  }

  std::string fresh() {
    for (std::size_t k = 1;; ++k) {
      std::string v = "V" + std::to_string(k);
      if (used_.insert(v).second) return v;
    }
  }

  const std::map<std::size_t, std::set<std::size_t>>& selected_;
  std::set<std::string> used_;
  std::size_t counter_ = 0;
};

}  // namespace

std::vector<AtomSelector> eligible_positions(const Theory& th) {
  std::vector<AtomSelector> out;
  std::map<std::size_t, std::set<std::size_t>> none;
  for (std::size_t i = 0; i < th.formulas.size(); ++i) {
    Rewriter r(none, {});
    r.formula(th.formulas[i]);
    for (auto [atom, arg] : r.positions) out.push_back({i, atom, arg});
  }
  return out;
}

Theory existential_intro_transform(const Theory& th, const std::vector<AtomSelector>& selectors) {
  std::map<std::size_t, std::map<std::size_t, std::set<std::size_t>>> by_formula;
  for (const auto& s : selectors) {
    if (s.formula >= th.formulas.size())
      throw InputError("selector " + s.to_string() + ": no such formula");
    by_formula[s.formula][s.atom].insert(s.arg);
  }
  Theory out = th;
  for (const auto& [i, selected] : by_formula) {
    std::set<std::string> used;
    collect_names(*th.formulas[i], used);
    Rewriter r(selected, used);
    out.formulas[i] = r.formula(th.formulas[i]);
    for (const auto& [atom, args] : selected)
      for (auto arg : args)
        if (!r.applied.count({atom, arg}))
          throw InputError("selector " + AtomSelector{i, atom, arg}.to_string() +
                           ": not an eligible atom position");
  }
  return out;
}

Theory existential_intro_transform(const Theory& th, const AtomSelector& selector) {
  return existential_intro_transform(th, std::vector<AtomSelector>{selector});
}

}  // namespace setasp
