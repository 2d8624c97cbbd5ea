#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ocw {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitInput = 2, kExitCap = 3 };

/// Entry point of the `ocw` tool. `args` excludes the program name.
///
///   ocw parse     --word W
///   ocw plan      --word W
///   ocw verify    --word W --group G [--bind N1=label,N2=gens:[[...]],...]
///   ocw theorem-a --word W --group G --exponents 2,3
///   ocw survey    [--group G]... [--word W]...
///   ocw catalog list
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ocw
