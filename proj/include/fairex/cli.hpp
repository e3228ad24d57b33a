#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fairex {

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitWitness = 2;

// Runs one command line (without the program name). Reports go to `out`,
// diagnostics to `err`. Returns 0 on pass, 2 when a witness or exploit was
// found, 1 on usage, parse or guard errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fairex
