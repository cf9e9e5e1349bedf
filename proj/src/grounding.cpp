#include "setasp/grounding.hpp"

#include "setasp/errors.hpp"
#include "setasp/printer.hpp"

namespace setasp {

GroundTheory ground_theory(const Theory& th, const std::vector<Value>& domain, std::size_t cap) {
  GroundTheory gt;
  for (std::size_t i = 0; i < th.formulas.size(); ++i) {
    std::vector<const Formula*> prefix;
    const Formula* body = th.formulas[i].get();
    FormulaPtr body_ptr = th.formulas[i];
    while (body->kind == FormulaKind::Forall) {
      prefix.push_back(body);
      body_ptr = body->lhs;
      body = body_ptr.get();
    }
    std::size_t count = 1;
    for (std::size_t k = 0; k < prefix.size(); ++k) {
      count *= domain.size();
      if (count + gt.instances.size() > cap) {
        throw BoundsError("hard_cap", "grounding '" + statement_to_string(*th.formulas[i]) +
                                          "' exceeds " + std::to_string(cap) + " instances");
      }
    }
    Env env(prefix.size());
    for (std::size_t k = 0; k < prefix.size(); ++k) env[k].name = prefix[k]->name;
    std::vector<std::size_t> idx(prefix.size(), 0);
    if (!prefix.empty() && domain.empty()) continue;
    while (true) {
      for (std::size_t k = 0; k < prefix.size(); ++k) env[k].value = domain[idx[k]];
      gt.instances.push_back({body_ptr, env, i});
      bool done = true;
      for (std::size_t k = prefix.size(); k-- > 0;) {
        if (++idx[k] < domain.size()) {
          done = false;
          break;
        }
        idx[k] = 0;
      }
      if (done) break;
    }
  }
  return gt;
}

FormulaPtr materialize(const GroundInstance& gi) { return substitute(gi.formula, gi.env); }

}  // namespace setasp
