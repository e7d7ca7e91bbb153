#pragma once

#include <iosfwd>

namespace anisoac {

/// Exit codes of the command-line driver.
inline constexpr int kExitPass = 0;
inline constexpr int kExitExperimentFailure = 2;
inline constexpr int kExitConfigError = 3;

/// Subcommands: validate, profile, mobility, simulate, flow, converge, generation.
/// Returns one of the exit codes above.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace anisoac
