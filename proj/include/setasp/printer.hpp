#pragma once

#include <string>

#include "setasp/syntax.hpp"

namespace setasp {

std::string to_string(const Term& t);
std::string to_string(const Formula& f);

/// One theory formula in statement form, e.g. "p(Y) :- Y = {X:q(X)}." The
/// output re-parses to the same formula.
std::string statement_to_string(const Formula& f);

/// Function declarations followed by one statement per line.
std::string theory_to_string(const Theory& th);

}  // namespace setasp
