#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace normality::cli {

enum ExitCode : int { kOk = 0, kUnknownCommand = 1, kDomainError = 2, kIoError = 3 };

/// Runs one command; `args` excludes the program name. Reports go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace normality::cli
