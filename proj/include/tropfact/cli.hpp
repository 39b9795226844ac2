#pragma once

// Batch command-line front end. `run_cli` is the whole program minus main():
// it parses `args` (without the program name), writes results to `out` and
// diagnostics to `err`, and returns the exit code.
//
// Exit codes: 0 affirmative or success, 1 negative decision, 2 usage or
// input error, 3 iteration limit reached, 4 internal error.

#include <ostream>
#include <string>
#include <vector>

namespace tropfact {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tropfact
