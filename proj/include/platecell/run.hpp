#pragma once

#include "platecell/config.hpp"

namespace platecell {

/// Worker cap: PLATECELL_THREADS when set, otherwise min(hardware, 4).
int worker_cap();

/// Solve several modes against one assembled problem, possibly
/// concurrently (results are deterministic and ordered like the input).
std::vector<CorrectorField> solve_modes(const CellProblem& problem,
                                        const std::vector<MacroMode>& modes, int threads = 0);

/// The command-line pipeline. args excludes the program name. Returns the
/// process exit code: 0 success, 1 validation/usage error, 2 solver
/// failure; errors go to stderr with an "error:" prefix.
int run_command(const std::vector<std::string>& args);

}  // namespace platecell
