#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gimvip {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerdict = 1,
  kExitInput = 2,
  kExitNumerical = 3,
};

/// `gimvip {validate|simulate|solve|certify|bench|plot} ...`. args[0] is the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace gimvip
