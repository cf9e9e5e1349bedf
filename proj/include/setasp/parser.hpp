#pragma once

#include <string>
#include <string_view>

#include "setasp/errors.hpp"
#include "setasp/syntax.hpp"

namespace setasp {

/// Parses a program. Free variables are universally closed, intensional sets
/// get explicit bound variables and `f(x) := t :- body` is expanded.
/// Throws ParseError (with line/column) on syntax, arity, clash or binding errors.
Theory parse_program(std::string_view text);

/// Parses a single formula with the theory's declarations in scope; free
/// variables are left open. Used by tests and the property suites.
FormulaPtr parse_formula(std::string_view text, const Theory& context);
TermPtr parse_term(std::string_view text, const Theory& context);

}  // namespace setasp
