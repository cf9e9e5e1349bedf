#pragma once

#include <iosfwd>

namespace setasp {

/// Command-line front end. Returns the process exit status: 0 on success,
/// 1 when two semantics disagree or a property suite fails, 2 on input errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace setasp
