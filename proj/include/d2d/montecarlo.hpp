#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "d2d/params.hpp"

namespace d2d {

enum class Scheme { NoControl, Centralized, Distributed };

std::string scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(const std::string& name);

struct ExperimentSpec {
    SystemParams params;
    Scheme scheme = Scheme::NoControl;
    std::vector<double> beta_grid_db; // strictly increasing
    int n_drops = 1000;
    std::uint64_t seed = 1;
    int threads = 1;

    // distributed-policy selection: exactly one of fixed_gmin / fixed_ps,
    // or auto_optimal_ps (threshold re-optimized at every grid beta)
    bool auto_optimal_ps = true;
    std::optional<double> fixed_gmin;
    std::optional<double> fixed_ps;
    bool cell_onoff = false; // opt-in distance-aware on-off uplink power

    void validate() const;
};

struct Estimate {
    double mean = 0.0;
    double ci_halfwidth = 0.0; // 99% normal-approximation half width
};

// Binomial mean and CI from an indicator stream.
Estimate coverage_estimator(const std::vector<double>& indicators);
Estimate coverage_estimator(double sum, double n);

// Mean and CI of a real-valued sample.
Estimate mean_estimator(const std::vector<double>& values);

struct BetaRow {
    double beta_db = 0.0;
    double beta_lin = 0.0;
    double cell_cov_analytic = 0.0;
    double d2d_cov_analytic = 0.0;
    Estimate cell_cov;
    Estimate d2d_cov_uncond;   // off links count as uncovered
    Estimate d2d_cov_active;   // conditional on transmitting
    double admitted_frac = 0.0; // transmitting fraction of in-cell links
    double mean_active = 0.0;   // mean transmitting in-cell links per drop
    Estimate d2d_rate;          // sum of log2(1+SINR) over active in-cell links
};

struct ExperimentReport {
    std::vector<BetaRow> rows;
    Estimate sum_rate_sim;          // adaptive-threshold sum-rate estimator
    double sum_rate_analytic = 0.0;
    double elapsed_seconds = 0.0;
};

// Drop-based simulation over the beta grid.  Deterministic for a fixed
// spec regardless of the thread count: every drop owns the random
// sub-stream derived from (seed, drop) and the reduction runs in drop
// order.
ExperimentReport run_experiment(const ExperimentSpec& spec);

struct CompareSummary {
    std::vector<double> cell_gap; // |analytic - simulated| per grid point
    std::vector<double> d2d_gap;
    double max_gap = 0.0;
    double containment = 0.0; // fraction of checks with analytic inside the CI
};

// Analytic-vs-simulated divergence of one report.  D2D columns are not
// comparable for the centralized scheme (no closed form), so only the
// cellular side is checked there.
CompareSummary compare_report(const ExperimentReport& report, Scheme scheme);

// CSV with one row per grid beta; schema documented in the README.
void write_report_csv(std::ostream& os, const ExperimentSpec& spec,
                      const ExperimentReport& report);

} // namespace d2d
