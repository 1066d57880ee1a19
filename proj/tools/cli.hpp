#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abelcanon::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFalse = 1,         // equiv: not equivalent; verify: a check failed
  kUsageError = 2,    // bad arguments, group or element syntax
  kDomainError = 3,   // infinite class count, cap exceeded
};

/// Runs one command. `args` includes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abelcanon::cli
