#ifndef FRACCOV_CLI_HPP
#define FRACCOV_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace fraccov {

constexpr const char* kToolName = "fractal-coverage";
constexpr const char* kToolVersion = "0.1.0";

// Runs the command-line tool on the given arguments (program name excluded).
// Exit codes: 0 success, 1 input/parse error, 2 analysis degeneracy.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fraccov

#endif
