#pragma once

#include <ostream>

#include "syncsim/cli/config.hpp"

namespace syncsim::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kInvalidInput = 2 };

// Each command writes its table per config.output (stdout is `out`) and
// returns the process exit status. Diagnostics go to `log`.

/// Exhaustive generator check on run.configs random configurations
/// (coordinates uniform on [-10, 10]) for model.N, or each N in run.N_list.
int cmd_oracle_check(const RunConfig& config, std::ostream& out, std::ostream& log);

/// Monte Carlo estimates at run.checkpoints; fails if any |z| > 4.
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& log);

/// Exact curves over run.checkpoints (time rows), run.steps (embedded-chain
/// rows) and, when run.regime is set, one row per N in run.N_list.
int cmd_analytic(const RunConfig& config, std::ostream& out, std::ostream& log);

/// Regime sweep over run.N_list; fails if any row misses the exact curve
/// by more than 4 standard errors or is inconsistent with the leading order.
int cmd_phase_sweep(const RunConfig& config, std::ostream& out, std::ostream& log);

// Per-configuration tolerances used by oracle-check.
inline constexpr double kVarianceIdentityTol = 1e-9;   // relative to max(1, V)
inline constexpr double kMeanIdentityTol = 1e-12;      // relative to max(1, |x|_inf)
inline constexpr double kFreeDynamicsTol = 1e-10;      // relative to alpha b2
inline constexpr double kZThreshold = 4.0;

}  // namespace syncsim::cli
