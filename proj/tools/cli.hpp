#pragma once

#include <ostream>
#include <span>
#include <string>

namespace kfl::cli {

enum ExitCode : int {
  kOk = 0,
  kDoesNotHold = 1,
  kUsage = 2,
  kNothingToWitness = 3,
};

/// Runs one subcommand. `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace kfl::cli
