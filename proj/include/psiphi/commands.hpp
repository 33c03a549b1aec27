#pragma once

#include <iosfwd>
#include <string>

#include "psiphi/config.hpp"

namespace psiphi {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitConditionFail = 2;
inline constexpr int kExitNoConvergence = 3;

enum class SolveMode { Plain, Coupled, Extended };

/// Prints one PASS/FAIL/HEURISTIC row per condition plus sampled
/// contraction checks for every configured map. Exit 0 when everything
/// passes, 2 on any analytic failure, 1 on configuration problems.
int cmd_check(const RunConfig& cfg, std::ostream& log);

/// Runs the matching Picard engine, logging `iter=<n> residual=<r>` lines
/// and the fixed point. Exit 0 on convergence, 3 when max_iter runs out.
int cmd_solve(const RunConfig& cfg, SolveMode mode, std::ostream& log);

/// Runs (coupled) attractor iteration, logging
/// `iter=<n> hausdorff=<h> points=<m>` lines, and writes the attractor
/// CSV (and optional raster). Exit codes as cmd_solve.
int cmd_attractor(const RunConfig& cfg, bool coupled, std::ostream& log);

/// Loads two CSV clouds and prints both directed distances and the
/// Hausdorff distance at full precision.
int cmd_hausdorff(const RunConfig& cfg, const std::string& file_a,
                  const std::string& file_b, std::ostream& log);

}  // namespace psiphi
