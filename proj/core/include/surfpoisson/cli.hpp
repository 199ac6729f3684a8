#pragma once

#include <iosfwd>

#include "surfpoisson/runconfig.hpp"

namespace surfpoisson {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitGeometry = 2;
inline constexpr int kExitCompatibility = 3;
inline constexpr int kExitSolver = 4;

/// Subcommand bodies. Each writes its artifacts under config.output_dir and
/// logs a short summary unless quiet. Exceptions are mapped to exit codes.
int cmd_validate(const RunConfig& config, std::ostream& log, bool quiet);
int cmd_solve(const RunConfig& config, std::ostream& log, bool quiet);
int cmd_divfield(const RunConfig& config, std::ostream& log, bool quiet);
int cmd_identities(const RunConfig& config, std::ostream& log, bool quiet);
int cmd_convergence(const RunConfig& config, std::ostream& log, bool quiet);
int cmd_eigen(const RunConfig& config, std::ostream& log, bool quiet);

}  // namespace surfpoisson
