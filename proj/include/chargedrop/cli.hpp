#ifndef CHARGEDROP_CLI_HPP
#define CHARGEDROP_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace chargedrop {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_usage = 2,
  exit_domain = 3,
  exit_numerical = 4,
};

/// Runs the tool on args (without the program name). Data goes to out unless
/// --out is given; diagnostics go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chargedrop

#endif  // CHARGEDROP_CLI_HPP
