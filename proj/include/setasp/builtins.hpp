#pragma once

#include <string_view>

#include "setasp/value.hpp"

namespace setasp {

/// count, sum, max or min applied to a value; Undef unless the argument is a
/// set the aggregate is defined on. Results are not range-checked here.
Value aggregate_eval(std::string_view f, const Value& s);

/// + - * / on integers. Division is exact: Undef on a zero divisor or a
/// remainder. Undef on non-integer operands or overflow.
Value arith_eval(std::string_view op, const Value& a, const Value& b);

/// | (union) & (intersection) \ (difference). Undef unless both operands are
/// sets of the same member arity (the empty set fits any arity).
Value set_op_eval(std::string_view op, const Value& a, const Value& b);

/// <= >= < > on integers (false otherwise), != on any values, and tuple
/// membership `in`. Both arguments must be defined.
bool relation_holds(std::string_view rel, const Value& a, const Value& b);

}  // namespace setasp
