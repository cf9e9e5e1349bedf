#include "setasp/generator.hpp"

#include <random>
#include <vector>

#include "setasp/errors.hpp"
#include "setasp/parser.hpp"
#include "setasp/solver.hpp"

namespace setasp {

DomainBounds generator_bounds(const GeneratorConfig& cfg) {
  DomainBounds b;
  b.min_int = cfg.min_int;
  b.max_int = cfg.max_int;
  return b;
}

namespace {

struct PredDecl {
  std::string name;
  int arity;
};

class Gen {
 public:
  Gen(std::uint64_t seed, std::uint64_t attempt, const GeneratorConfig& cfg) : cfg_(cfg) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(attempt)};
    rng_.seed(seq);
    int n = uniform(1, cfg.max_predicates);
    const char* names[] = {"p", "q", "r", "s", "t"};
    for (int i = 0; i < n && i < 5; ++i) preds_.push_back({names[i], uniform(0, 1)});
    for (int i = 0; i < cfg.constants && i < 3; ++i) consts_.push_back(std::string(1, "abc"[i]));
    // Most arguments come from a small per-program pool so that rules interact.
    for (int i = 0; i < 2; ++i) pool_.push_back(any_constant(true));
    plain_pool_ = consts_.empty() ? pool_ : std::vector<std::string>{any_constant(false), any_constant(false)};
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::string constant(bool ints) {
    const auto& pool = ints ? pool_ : plain_pool_;
    if (chance(0.75)) return pool[static_cast<std::size_t>(uniform(0, 1))];
    return any_constant(ints);
  }

  std::string any_constant(bool ints) {
    std::size_t n_ints = ints ? static_cast<std::size_t>(cfg_.max_int - cfg_.min_int + 1) : 0;
    std::size_t k = static_cast<std::size_t>(uniform(0, static_cast<int>(consts_.size() + n_ints) - 1));
    if (k < consts_.size()) return consts_[k];
    return std::to_string(cfg_.min_int + static_cast<std::int64_t>(k - consts_.size()));
  }

  const PredDecl& pred() { return preds_[static_cast<std::size_t>(uniform(0, static_cast<int>(preds_.size()) - 1))]; }

  const PredDecl* unary() {
    std::vector<const PredDecl*> u;
    for (const auto& p : preds_)
      if (p.arity == 1) u.push_back(&p);
    if (u.empty()) return nullptr;
    return u[static_cast<std::size_t>(uniform(0, static_cast<int>(u.size()) - 1))];
  }

  static std::string atom(const PredDecl& p, const std::string& arg) {
    return p.arity == 0 ? p.name : p.name + "(" + arg + ")";
  }

  std::string set_atom(bool ints) {
    const PredDecl* u = head_unary_ ? head_unary_ : unary();
    std::string body = u->name + "(Z)";
    if (chance(0.5)) {
      switch (uniform(0, 2)) {
        case 0: body += ", not " + atom(*unary(), "Z"); break;
        case 1: body += ", Z != " + constant(ints); break;
        default: {
          const PredDecl& p = pred();
          body += ", " + atom(p, p.arity ? "Z" : "");
        }
      }
    }
    const char* aggs[] = {"count", "sum"};
    const char* rels[] = {">=", "=", "<="};
    return std::string(aggs[uniform(0, 1)]) + "{Z : " + body + "} " + rels[uniform(0, 2)] + " " +
           std::to_string(uniform(static_cast<int>(cfg_.min_int), static_cast<int>(cfg_.max_int)));
  }

  // A ground head atom of some rule, or a fresh atom; bodies lean on heads so
  // that the rules depend on each other.
  std::string ground_literal(const std::vector<std::string>& heads, const std::string& self) {
    std::vector<const std::string*> others;
    for (const auto& h : heads)
      if (h != self) others.push_back(&h);
    if (!others.empty() && chance(0.75))
      return *others[static_cast<std::size_t>(uniform(0, static_cast<int>(others.size()) - 1))];
    return atom(pred(), constant(true));
  }

  std::string gz_program() {
    struct Rule {
      int kind;  // 0-4 fact, 5-16 rule, 17-19 constraint
      bool var_head;
      std::string head;
    };
    std::vector<Rule> rules(static_cast<std::size_t>(uniform(std::min(2, cfg_.max_rules), cfg_.max_rules)));
    std::vector<std::string> heads;
    head_unary_ = nullptr;
    for (auto& r : rules) {
      r.kind = uniform(0, 19);
      const PredDecl& h = pred();
      r.var_head = h.arity == 1 && r.kind >= 5 && chance(0.4);
      r.head = atom(h, r.var_head ? "X" : constant(true));
      if (r.kind < 17 && !r.var_head) heads.push_back(r.head);
      if (r.kind < 17 && h.arity == 1 && !head_unary_) head_unary_ = &h;
    }
    std::string out;
    for (const auto& r : rules) {
      if (r.kind < 5) {
        out += r.head + ".\n";
        continue;
      }
      std::vector<std::string> body;
      bool x_positive = false;
      int n = uniform(1, cfg_.max_body);
      for (int i = 0; i < n; ++i) {
        int lit = uniform(0, 19);
        if (lit < 5 || (lit >= 14 && !unary())) {
          const PredDecl& p = pred();
          bool use_x = p.arity == 1 && r.var_head && chance(0.6);
          x_positive |= use_x;
          body.push_back(use_x ? atom(p, "X") : ground_literal(heads, r.head));
        } else if (lit < 14) {
          const PredDecl& p = pred();
          body.push_back("not " + (p.arity == 1 && x_positive && chance(0.5) ? atom(p, "X")
                                                                              : ground_literal(heads, r.head)));
        } else {
          body.push_back(set_atom(true));
        }
      }
      if (r.var_head && !x_positive) {
        const PredDecl* u = unary();
        std::string a = atom(*u, "X");
        if (static_cast<int>(body.size()) < cfg_.max_body) body.push_back(a);
        else body.front() = a;
      }
      std::string text;
      for (std::size_t i = 0; i < body.size(); ++i) text += (i ? ", " : "") + body[i];
      out += (r.kind >= 17 ? "" : r.head + " ") + ":- " + text + ".\n";
    }
    return out;
  }

  std::string plain_program() {
    std::string out;
    bool fn = chance(0.4);
    if (fn) out += "#function f/0 : {a; b}.\n";
    auto arg = [&] { return fn && chance(0.25) ? std::string("f") : constant(false); };
    struct Rule {
      int kind;
      bool var_head;
      std::string head;
    };
    std::vector<Rule> rules(static_cast<std::size_t>(uniform(1, cfg_.max_rules)));
    std::vector<std::string> heads;
    for (auto& r : rules) {
      r.kind = uniform(0, 19);
      const PredDecl& h = pred();
      r.var_head = h.arity == 1 && r.kind >= 5 && chance(0.4);
      r.head = atom(h, r.var_head ? "X" : arg());
      if (r.kind < 17 && !r.var_head) heads.push_back(r.head);
    }
    auto literal = [&] {
      if (!heads.empty() && chance(0.6))
        return heads[static_cast<std::size_t>(uniform(0, static_cast<int>(heads.size()) - 1))];
      return atom(pred(), arg());
    };
    for (const auto& r : rules) {
      if (r.kind < 5) {
        out += r.head + ".\n";
        continue;
      }
      std::vector<std::string> body;
      bool x_positive = false;
      int n = uniform(1, cfg_.max_body);
      for (int i = 0; i < n; ++i) {
        int lit = uniform(0, 9);
        const PredDecl& p = pred();
        if (lit < 4) {
          bool use_x = p.arity == 1 && r.var_head && chance(0.6);
          x_positive |= use_x;
          body.push_back(use_x ? atom(p, "X") : literal());
        } else if (lit < 8) {
          body.push_back("not " + (p.arity == 1 && x_positive && chance(0.5) ? atom(p, "X") : literal()));
        } else if (fn) {
          body.push_back(std::string("f ") + (chance(0.5) ? "=" : "!=") + " " + constant(false));
        } else {
          body.push_back((x_positive ? std::string("X") : constant(false)) + " != " + constant(false));
        }
      }
      if (r.var_head && !x_positive) {
        const PredDecl* u = unary();
        std::string a = atom(*u, "X");
        if (static_cast<int>(body.size()) < cfg_.max_body) body.push_back(a);
        else body.front() = a;
      }
      std::string text;
      for (std::size_t i = 0; i < body.size(); ++i) text += (i ? ", " : "") + body[i];
      out += (r.kind >= 17 ? "" : r.head + " ") + ":- " + text + ".\n";
    }
    return out;
  }

 private:
  const GeneratorConfig& cfg_;
  std::mt19937_64 rng_;
  std::vector<PredDecl> preds_;
  std::vector<std::string> consts_;
  std::vector<std::string> pool_, plain_pool_;
  const PredDecl* head_unary_ = nullptr;  // set bodies prefer a derived predicate
};

template <class Make>
std::string reroll(std::uint64_t seed, const GeneratorConfig& cfg, Make make) {
  DomainBounds b = generator_bounds(cfg);
  for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
    Gen g(seed, attempt, cfg);
    std::string text = make(g);
    Theory th = parse_program(text);
    EvalContext ctx = make_context(th, b);
    GroundTheory gt = ground_theory(th, ctx.domain);
    if (build_search_space(ctx, gt).free_atoms.size() <= cfg.max_free_atoms) return text;
  }
  throw InputError("generator could not meet the free-atom limit");
}

}  // namespace

std::string generate_gz_program(std::uint64_t seed, const GeneratorConfig& cfg) {
  return reroll(seed, cfg, [](Gen& g) { return g.gz_program(); });
}

std::string generate_plain_program(std::uint64_t seed, const GeneratorConfig& cfg) {
  return reroll(seed, cfg, [](Gen& g) { return g.plain_program(); });
}

}  // namespace setasp
