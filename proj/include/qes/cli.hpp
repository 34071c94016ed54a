#pragma once

#include <iosfwd>

namespace qes {

/// Exit codes: 0 pass, 1 verification failure, 2 configuration error,
/// 3 numerical failure.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitConfig = 2, kExitNumerical = 3 };

/// Subcommands generate, verify, spectrum, sl2. Artifacts go to --out when
/// given, otherwise to `out`; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qes
