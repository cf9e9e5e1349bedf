#include "setasp/printer.hpp"

namespace setasp {

namespace {

enum Prec { kImplies = 1, kOr = 2, kAnd = 3, kUnary = 4 };

void print(const Term& t, std::string& out);
void print(const Formula& f, int prec, std::string& out);

void print_list(const std::vector<TermPtr>& ts, std::string& out) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += ',';
    print(*ts[i], out);
  }
}

bool is_binary(const Term& t) { return t.kind == TermKind::Arith || t.kind == TermKind::SetOp; }

bool compact_set(const Term& t) {
  std::vector<std::string> head_free;
  for (const auto& h : t.args)
    for (const auto& v : h->free)
      if (std::find(head_free.begin(), head_free.end(), v) == head_free.end()) head_free.push_back(v);
  return head_free == t.bound;
}

void print(const Term& t, std::string& out) {
  switch (t.kind) {
    case TermKind::Var: out += t.name; return;
    case TermKind::Const: out += t.value.to_string(); return;
    case TermKind::Herbrand:
      out += t.name;
      out += '(';
      print_list(t.args, out);
      out += ')';
      return;
    case TermKind::Eval:
      out += t.name;
      if (t.args.size() == 1 && t.args[0]->kind == TermKind::IntSet) {
        print(*t.args[0], out);
      } else if (!t.args.empty()) {
        out += '(';
        print_list(t.args, out);
        out += ')';
      }
      return;
    case TermKind::ExtSet:
      out += '{';
      print_list(t.args, out);
      out += '}';
      return;
    case TermKind::IntSet:
      out += '{';
      if (!compact_set(t)) {
        for (std::size_t i = 0; i < t.bound.size(); ++i) {
          if (i) out += ',';
          out += t.bound[i];
        }
        out += ':';
      }
      print_list(t.args, out);
      out += ':';
      print(*t.body, kImplies, out);
      out += '}';
      return;
    case TermKind::Arith:
    case TermKind::SetOp:
      for (int i = 0; i < 2; ++i) {
        const Term& c = *t.args[i];
        if (i) out += " " + t.name + " ";
        if (is_binary(c)) out += '(';
        print(c, out);
        if (is_binary(c)) out += ')';
      }
      return;
    case TermKind::Tuple:
      out += '(';
      print_list(t.args, out);
      out += ')';
      return;
  }
}

void print_quantifier(const Formula& f, std::string& out) {
  out += f.kind == FormulaKind::Forall ? "forall " : "exists ";
  const Formula* cur = &f;
  bool first = true;
  while (cur->kind == f.kind) {
    if (!first) out += ',';
    out += cur->name;
    first = false;
    cur = cur->lhs.get();
  }
  out += " (";
  print(*cur, kImplies, out);
  out += ')';
}

void print(const Formula& f, int prec, std::string& out) {
  int own = kUnary;
  if (f.kind == FormulaKind::Implies && !f.is_negation()) own = kImplies;
  if (f.kind == FormulaKind::Or) own = kOr;
  if (f.kind == FormulaKind::And) own = kAnd;
  bool paren = own < prec;
  if (paren) out += '(';
  switch (f.kind) {
    case FormulaKind::Bot: out += "#false"; break;
    case FormulaKind::Top: out += "#true"; break;
    case FormulaKind::Pred:
      if (f.builtin) {
        print(*f.args[0], out);
        out += " " + f.name + " ";
        print(*f.args[1], out);
      } else {
        out += f.name;
        if (!f.args.empty()) {
          out += '(';
          print_list(f.args, out);
          out += ')';
        }
      }
      break;
    case FormulaKind::Eq:
      print(*f.args[0], out);
      out += " = ";
      print(*f.args[1], out);
      break;
    case FormulaKind::And:
      print(*f.lhs, kAnd, out);
      out += ", ";
      print(*f.rhs, kUnary, out);
      break;
    case FormulaKind::Or:
      print(*f.lhs, kOr, out);
      out += "; ";
      print(*f.rhs, kAnd, out);
      break;
    case FormulaKind::Implies:
      if (f.is_negation()) {
        out += "not ";
        print(*f.lhs, kUnary, out);
      } else {
        print(*f.lhs, kOr, out);
        out += " -> ";
        print(*f.rhs, kImplies, out);
      }
      break;
    case FormulaKind::Forall:
    case FormulaKind::Exists: print_quantifier(f, out); break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string to_string(const Term& t) {
  std::string out;
  print(t, out);
  return out;
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, kImplies, out);
  return out;
}

std::string statement_to_string(const Formula& f) {
  std::vector<std::string> vars;
  const Formula* inner = &f;
  while (inner->kind == FormulaKind::Forall) {
    vars.push_back(inner->name);
    inner = inner->lhs.get();
  }
  std::string out;
  if (vars != inner->free) {
    print(f, kImplies, out);
    return out + ".";
  }
  if (inner->kind == FormulaKind::Implies) {
    if (inner->rhs->kind != FormulaKind::Bot) {
      print(*inner->rhs, kOr, out);
      out += ' ';
    }
    out += ":- ";
    print(*inner->lhs, kOr, out);
    return out + ".";
  }
  print(*inner, kOr, out);
  return out + ".";
}

std::string theory_to_string(const Theory& th) {
  std::string out;
  for (const auto& [name, range] : th.function_ranges) {
    int arity = 0;
    for (const auto& [n, a] : th.sig.functions)
      if (n == name) arity = a;
    out += "#function " + name + "/" + std::to_string(arity) + " : {";
    for (std::size_t i = 0; i < range.size(); ++i) {
      if (i) out += "; ";
      out += range[i].to_string();
    }
    out += "}.\n";
  }
  for (const auto& f : th.formulas) out += statement_to_string(*f) + "\n";
  return out;
}

}  // namespace setasp
