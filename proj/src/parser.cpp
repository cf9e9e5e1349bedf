#include "setasp/parser.hpp"

#include <cctype>
#include <charconv>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace setasp {

namespace {

enum class Tok { Ident, Var, Int, Directive, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> tokenize(std::string_view src) {
  static const char* const kPuncts[] = {":-", ":=", "->", "!=", "<=", ">=", "(", ")", "{", "}",
                                        ",",  ";",  ":",  ".",  "=",  "<",  ">", "+", "-", "*",
                                        "/",  "|",  "&",  "\\"};
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int l = line;
    int cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '#') {
      std::size_t j = i + 1;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      std::string text(src.substr(i, j - i));
      Tok kind = Tok::Ident;
      if (c == '#') {
        if (text.size() == 1) throw ParseError(l, cl, "stray '#'");
        kind = Tok::Directive;
      } else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
        kind = Tok::Var;
      }
      out.push_back({kind, std::move(text), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const char* p : kPuncts) {
      std::string_view pv(p);
      if (src.substr(i, pv.size()) == pv) {
        out.push_back({Tok::Punct, std::string(pv), l, cl});
        advance(pv.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, Theory* th) : toks_(std::move(toks)), th_(th) {}

  void collect_declarations() {
    for (std::size_t k = 0; k + 3 < toks_.size(); ++k) {
      if (toks_[k].kind == Tok::Directive && toks_[k].text == "#function") {
        const Token& name = toks_[k + 1];
        if (name.kind != Tok::Ident || toks_[k + 2].text != "/" || toks_[k + 3].kind != Tok::Int)
          throw ParseError(name.line, name.col, "expected #function name/arity");
        int arity = std::stoi(toks_[k + 3].text);
        auto [it, fresh] = declared_.emplace(name.text, arity);
        if (!fresh) throw ParseError(name.line, name.col, "function " + name.text + " declared twice");
      }
    }
  }

  void program() {
    while (peek().kind != Tok::End) statement();
    finish_signature();
  }

  FormulaPtr whole_formula() {
    auto f = formula();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

  TermPtr whole_term() {
    auto t = term();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return t;
  }

  void set_declared(const Signature& sig) {
    for (const auto& [name, arity] : sig.functions) declared_.emplace(name, arity);
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(std::string_view p) const {
    return (peek().kind == Tok::Punct || peek().kind == Tok::Ident || peek().kind == Tok::Directive) &&
           peek().text == p;
  }
  bool accept(std::string_view p) {
    if (!at(p)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(peek().line, peek().col, msg);
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.col, msg);
  }
  void expect(std::string_view p) {
    if (!accept(p)) {
      std::string got = peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'";
      fail("expected '" + std::string(p) + "' but found " + got);
    }
  }

  template <class F>
  auto attempt(F&& f) -> std::optional<decltype(f())> {
    std::size_t save = pos_;
    std::size_t uses = pred_uses_.size();
    try {
      return f();
    } catch (const ParseError&) {
      pos_ = save;
      pred_uses_.erase(pred_uses_.begin() + static_cast<std::ptrdiff_t>(uses), pred_uses_.end());
      return std::nullopt;
    }
  }

  void statement() {
    const Token& start = peek();
    if (start.kind == Tok::Directive && start.text == "#function") {
      function_decl();
      return;
    }
    if (accept(":-")) {
      auto body = formula();
      expect(".");
      add_formula(make_not(body));
      return;
    }
    std::size_t save = pos_;
    std::optional<TermPtr> lhs;
    try {
      lhs = term();
    } catch (const ParseError&) {
      lhs.reset();
    }
    if (lhs && at(":=")) {
      ++pos_;
      assignment(start, *lhs);
      return;
    }
    pos_ = save;
    auto head = formula();
    if (accept(":-")) {
      auto body = formula();
      expect(".");
      add_formula(make_implies(body, head));
      return;
    }
    expect(".");
    add_formula(head);
  }

  void assignment(const Token& start, const TermPtr& lhs) {
    if (lhs->kind != TermKind::Eval)
      fail_at(start, "undeclared evaluable function in assignment (use #function)");
    auto value = term();
    FormulaPtr guard = make_eq(value, value);
    if (accept(":-")) guard = make_and(formula(), guard);
    expect(".");
    add_formula(make_implies(guard, make_eq(lhs, value)));
  }

  void add_formula(const FormulaPtr& f) { th_->formulas.push_back(close_universally(f)); }

  void function_decl() {
    ++pos_;
    const Token& name = peek();
    ++pos_;
    expect("/");
    ++pos_;
    expect(":");
    expect("{");
    std::vector<Value> range;
    if (!at("}")) {
      do {
        const Token& vt = peek();
        auto t = term();
        if (t->kind != TermKind::Const) fail_at(vt, "function range values must be ground");
        range.push_back(t->value);
      } while (accept(";") || accept(","));
    }
    expect("}");
    expect(".");
    sort_unique(range);
    th_->function_ranges[name.text] = std::move(range);
  }

  // formula := disj ['->' formula]
  FormulaPtr formula() {
    auto l = disjunction();
    if (accept("->")) return make_implies(l, formula());
    return l;
  }

  FormulaPtr disjunction() {
    auto l = conjunction();
    while (accept(";")) l = make_or(l, conjunction());
    return l;
  }

  FormulaPtr conjunction() {
    auto l = unary();
    while (accept(",")) l = make_and(l, unary());
    return l;
  }

  FormulaPtr unary() {
    if (accept("not")) return make_not(unary());
    if (at("exists") || at("forall")) {
      bool ex = peek().text == "exists";
      ++pos_;
      std::vector<std::string> vars;
      do {
        if (peek().kind != Tok::Var) fail("expected variable after quantifier");
        vars.push_back(peek().text);
        ++pos_;
      } while (peek(0).text == "," && peek(1).kind == Tok::Var && accept(","));
      auto body = unary();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = ex ? make_exists(*it, body) : make_forall(*it, body);
      return body;
    }
    if (accept("#true")) return make_top();
    if (accept("#false")) return make_bot();
    if (at("(")) {
      auto grouped = attempt([&] {
        expect("(");
        auto f = formula();
        expect(")");
        if (is_relop() || is_term_op()) fail("not a grouped formula");
        return f;
      });
      if (grouped) return *grouped;
    }
    return atom();
  }

  bool is_relop() const {
    static const char* const ops[] = {"=", "!=", "<", "<=", ">", ">=", "in"};
    for (const char* o : ops)
      if (peek().kind != Tok::End && peek().text == o && peek().kind != Tok::Var) return true;
    return false;
  }

  bool is_term_op() const {
    static const char* const ops[] = {"+", "-", "*", "/", "|", "&", "\\"};
    for (const char* o : ops)
      if (peek().kind == Tok::Punct && peek().text == o) return true;
    return false;
  }

  FormulaPtr atom() {
    const Token& start = peek();
    auto l = term();
    if (is_relop()) {
      std::string op = peek().text;
      ++pos_;
      auto r = term();
      if (op == "=") return make_eq(l, r);
      return make_pred(op, {l, r});
    }
    std::string name;
    std::vector<TermPtr> args;
    if (l->kind == TermKind::Herbrand) {
      name = l->name;
      args = l->args;
    } else if (l->kind == TermKind::Const && l->value.is_symbol()) {
      name = l->value.name();
      for (const auto& v : l->value.items()) args.push_back(make_const(v));
    } else {
      fail_at(start, "expected an atom");
    }
    auto f = make_pred(name, std::move(args));
    if (f->builtin) fail_at(start, "reserved predicate name " + name);
    pred_uses_.push_back({name, static_cast<int>(f->args.size()), start});
    return f;
  }

  TermPtr term() {
    auto l = multiplicative();
    while (true) {
      if (accept("+")) l = make_arith("+", l, multiplicative());
      else if (at("-") ) {
        ++pos_;
        l = make_arith("-", l, multiplicative());
      } else if (accept("|")) l = make_set_op("|", l, multiplicative());
      else if (accept("\\")) l = make_set_op("\\", l, multiplicative());
      else return l;
    }
  }

  TermPtr multiplicative() {
    auto l = unary_term();
    while (true) {
      if (accept("*")) l = make_arith("*", l, unary_term());
      else if (accept("/")) l = make_arith("/", l, unary_term());
      else if (accept("&")) l = make_set_op("&", l, unary_term());
      else return l;
    }
  }

  TermPtr unary_term() {
    if (at("-")) {
      ++pos_;
      if (peek().kind == Tok::Int) return integer(true);
      return make_arith("-", make_const(Value::integer(0)), unary_term());
    }
    return primary();
  }

  TermPtr integer(bool negative) {
    const Token& t = peek();
    std::int64_t v = 0;
    auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (res.ec != std::errc()) fail("integer literal out of range");
    ++pos_;
    return make_const(Value::integer(negative ? -v : v));
  }

  TermPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: return integer(false);
      case Tok::Var:
        ++pos_;
        if (t.text == "_") fail_at(t, "anonymous variables are not supported");
        return make_var(t.text);
      case Tok::Directive: {
        std::string name = t.text.substr(1);
        if (!is_builtin_aggregate(name)) fail("unexpected '" + t.text + "'");
        ++pos_;
        return application(t, name);
      }
      case Tok::Ident:
        if (is_keyword(t.text)) fail("unexpected keyword '" + t.text + "'");
        ++pos_;
        return application(t, t.text);
      case Tok::Punct:
        if (t.text == "(") {
          ++pos_;
          std::vector<TermPtr> elems{term()};
          while (accept(",")) elems.push_back(term());
          expect(")");
          return make_tuple(std::move(elems));
        }
        if (t.text == "{") return set_term();
        break;
      case Tok::End: fail("unexpected end of input");
    }
    fail("unexpected '" + t.text + "'");
  }

  static bool is_keyword(std::string_view s) {
    return s == "not" || s == "in" || s == "exists" || s == "forall";
  }

  TermPtr application(const Token& t, const std::string& name) {
    std::vector<TermPtr> args;
    if (at("{")) {
      args.push_back(set_term());
    } else if (accept("(")) {
      if (!at(")")) {
        do args.push_back(term());
        while (accept(","));
      }
      expect(")");
    }
    int arity = static_cast<int>(args.size());
    if (auto it = declared_.find(name); it != declared_.end()) {
      if (it->second != arity)
        fail_at(t, "arity mismatch: " + name + "/" + std::to_string(it->second) + " used with " +
                       std::to_string(arity) + " argument(s)");
      return make_eval(name, std::move(args), false);
    }
    if (is_builtin_aggregate(name)) {
      if (arity != 1) fail_at(t, "arity mismatch: aggregate " + name + " takes one argument");
      th_->sig.aggregates.insert(name);
      return make_eval(name, std::move(args), true);
    }
    if (t.kind == Tok::Directive) fail_at(t, "unknown aggregate " + t.text);
    return make_herbrand(name, std::move(args));
  }

  TermPtr set_term() {
    const Token& open = peek();
    expect("{");
    if (accept("}")) return make_ext_set({});
    std::vector<TermPtr> first{term()};
    while (accept(",")) first.push_back(term());
    if (accept(":")) {
      auto three = attempt([&] {
        std::vector<TermPtr> head{term()};
        while (accept(",")) head.push_back(term());
        expect(":");
        return head;
      });
      std::vector<std::string> bound;
      std::vector<TermPtr> head;
      if (three) {
        for (const auto& b : first) {
          if (b->kind != TermKind::Var) fail_at(open, "bound variable list must contain variables only");
          bound.push_back(b->name);
        }
        head = std::move(*three);
      } else {
        head = std::move(first);
        for (const auto& h : head)
          for (const auto& v : h->free)
            if (std::find(bound.begin(), bound.end(), v) == bound.end()) bound.push_back(v);
      }
      auto body = formula();
      expect("}");
      try {
        return make_int_set(std::move(bound), std::move(head), std::move(body));
      } catch (const std::invalid_argument& e) {
        fail_at(open, e.what());
      }
    }
    while (accept(";") || accept(",")) first.push_back(term());
    expect("}");
    auto s = make_ext_set(std::move(first));
    if (s->kind == TermKind::ExtSet) {
      std::size_t arity = 0;
      for (const auto& e : s->args) {
        std::size_t a = e->kind == TermKind::Tuple ? e->args.size()
                        : (e->kind == TermKind::Const ? e->value.arity() : 1);
        if (arity != 0 && a != arity) fail_at(open, "set elements of different arity");
        arity = a;
      }
    }
    return s;
  }

  struct PredUse {
    std::string name;
    int arity;
    Token where;
  };

  void finish_signature() {
    Signature& sig = th_->sig;
    for (const auto& [name, arity] : declared_) {
      sig.functions.insert({name, arity});
      if (!th_->function_ranges.count(name)) th_->function_ranges[name] = {};
    }
    for (const auto& f : th_->formulas) collect_constructors(*f);
    for (const auto& u : pred_uses_) {
      if (declared_.count(u.name) || is_builtin_aggregate(u.name))
        fail_at(u.where, "symbol clash: " + u.name + " is an evaluable function");
      if (sig.constructors.count({u.name, u.arity}))
        fail_at(u.where, "symbol clash: " + u.name + "/" + std::to_string(u.arity) +
                             " is both a predicate and a constructor");
      sig.predicates.insert({u.name, u.arity});
    }
  }

  void collect_constructors(const Formula& f) {
    for (const auto& a : f.args) collect_constructors(*a);
    if (f.lhs) collect_constructors(*f.lhs);
    if (f.rhs) collect_constructors(*f.rhs);
  }

  void collect_constructors(const Value& v) {
    if (v.is_symbol()) th_->sig.constructors.insert({v.name(), static_cast<int>(v.size())});
    for (const auto& c : v.items()) collect_constructors(c);
  }

  void collect_constructors(const Term& t) {
    if (t.kind == TermKind::Const) collect_constructors(t.value);
    if (t.kind == TermKind::Herbrand)
      th_->sig.constructors.insert({t.name, static_cast<int>(t.args.size())});
    for (const auto& a : t.args) collect_constructors(*a);
    if (t.body) collect_constructors(*t.body);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Theory* th_;
  std::map<std::string, int> declared_;
  std::vector<PredUse> pred_uses_;
};

}  // namespace

Theory parse_program(std::string_view text) {
  Theory th;
  Parser p(tokenize(text), &th);
  p.collect_declarations();
  p.program();
  return th;
}

FormulaPtr parse_formula(std::string_view text, const Theory& context) {
  Theory scratch = context;
  Parser p(tokenize(text), &scratch);
  p.set_declared(context.sig);
  return p.whole_formula();
}

TermPtr parse_term(std::string_view text, const Theory& context) {
  Theory scratch = context;
  Parser p(tokenize(text), &scratch);
  p.set_declared(context.sig);
  return p.whole_term();
}

}  // namespace setasp
