#pragma once

// Command-line front end. Every subcommand writes one JSON document that
// embeds the run configuration.
//
// Exit codes: 0 success, 1 invalid input or failed check, 2 domain error or
// bad usage, 3 I/O error.

#include <iosfwd>
#include <string>
#include <vector>

namespace hypgeom::cli {

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kDomainError = 2, kIoError = 3 };

/// Runs the command line `args` (without the program name). The JSON result
/// goes to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypgeom::cli
