#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sacns {

/// Exit statuses of the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitAssertion = 1;  // a check failed; evidence files were written
inline constexpr int kExitUsage = 2;      // configuration, IO, or command-line error

/// Runs one subcommand (run, verify, mc-energy, mc-moment, uniqueness,
/// sweep-eps). `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cli_main(int argc, char** argv);

}  // namespace sacns
