#pragma once

#include <iosfwd>

namespace mdepth {

// Exit codes: 0 success, 2 bad input or parse error, 3 enumeration cap
// exceeded, 4 a verification check found a counterexample.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mdepth
