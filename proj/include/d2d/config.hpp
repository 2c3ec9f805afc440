#pragma once

#include <stdexcept>
#include <string>

#include "d2d/montecarlo.hpp"

namespace d2d {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything a run needs: scenario constants, scheme, grid, drops, seed,
// output path and the analysis tolerances.  Parsed from a flat
// `key = value` text file with '#' comments; unknown keys are rejected.
// Powers take an explicit unit suffix (W, mW or dBm) and are stored in
// watts.
struct RunConfig {
    ExperimentSpec spec;
    std::string out_path; // empty = stdout
    double cov_rel_tol = 1e-8;
    double rate_rel_tol = 1e-7;
    double sum_rate_rel_tol = 1e-6;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Apply one `key = value` assignment (used by the sweep command).
void apply_assignment(RunConfig& cfg, const std::string& key, const std::string& value);

// Canonical text form; parse_config(dump_config(c)) reproduces c exactly.
std::string dump_config(const RunConfig& cfg);

} // namespace d2d
