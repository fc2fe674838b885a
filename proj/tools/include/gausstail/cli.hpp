#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gausstail::cli {

/// Exit codes of the command line tool.
enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,          // bad flags, unparsable or invalid set description
  kInsufficient = 3,   // expansion order beyond the known germ
  kOracleFailure = 4,  // quadrature or moment evaluation failed
};

/// Runs the tool with argv[1..] in `args`. Data goes to `out` (or the -o
/// file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "a..b" (log-spaced, one point per decade unless points > 0),
/// "a,b,c" or a single number.
std::vector<double> parse_grid(const std::string& spec, int points = 0);

}  // namespace gausstail::cli
