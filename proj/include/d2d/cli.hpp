#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "d2d/config.hpp"

namespace d2d::cli {

// Analytic curves over the configured beta grid (one row per beta).
void cmd_analyze(const RunConfig& cfg, std::ostream& os);

// Drop-based simulation; CSV report per grid beta.
void cmd_simulate(const RunConfig& cfg, std::ostream& os);

// Simulate, then report the analytic-vs-simulated divergence.  Returns
// the CI-containment fraction (regression tripwire threshold is 0.9).
double cmd_compare(const RunConfig& cfg, std::ostream& csv_os, std::ostream& summary_os);

// Re-run analyze/simulate for each value of one swept config key.
void cmd_sweep(const RunConfig& cfg, const std::string& key,
               const std::vector<std::string>& values, const std::string& mode,
               std::ostream& os);

} // namespace d2d::cli
