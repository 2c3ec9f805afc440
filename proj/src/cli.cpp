#include "d2d/cli.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "d2d/analysis.hpp"
#include "d2d/distributed.hpp"
#include "d2d/units.hpp"

namespace d2d::cli {

namespace {

double effective_ps(const ExperimentSpec& spec, double beta_lin) {
    if (spec.scheme != Scheme::Distributed) return 1.0;
    if (spec.fixed_ps) return *spec.fixed_ps;
    if (spec.fixed_gmin)
        return std::exp(-*spec.fixed_gmin *
                        std::pow(spec.params.d2d_link_dist_m, spec.params.pathloss_exp));
    return optimal_ps(spec.params.d2d_density, beta_lin, spec.params.d2d_link_dist_m,
                      spec.params.pathloss_exp);
}

} // namespace

void cmd_analyze(const RunConfig& cfg, std::ostream& os) {
    const SystemParams& p = cfg.spec.params;
    const double sum_rate = d2d_sum_rate(p, cfg.sum_rate_rel_tol);
    os.precision(12);
    os << "beta_db,cell_cov_exact,cell_cov_closed,cell_cov_lb,d2d_cov_exact,d2d_cov_approx,"
          "tc,sum_rate\n";
    for (double beta_db : cfg.spec.beta_grid_db) {
        const double beta = db_to_linear(beta_db);
        const double ps = effective_ps(cfg.spec, beta);
        const double moment = d2d_power_moment(ps, p.p_max_d2d_w, p.pathloss_exp);

        SystemParams pt = p;
        pt.beta_cell = beta;
        pt.beta_d2d = beta;
        const double cov_exact = cell_coverage_exact(
            pt, P0Distribution::constant(p.p_max_cell_w), moment, beta, cfg.cov_rel_tol);
        const double cov_closed =
            p.pathloss_exp == 4.0
                ? cell_coverage_closed_alpha4(p.d2d_density, ps, p.p_max_d2d_w, p.p_max_cell_w,
                                              p.cell_radius_m, beta)
                : std::numeric_limits<double>::quiet_NaN();
        const double cov_lb =
            cell_coverage_lower_bound(pt, moment, beta, 1.0 / p.p_max_cell_w);

        SystemParams thinned = pt;
        thinned.d2d_density = p.d2d_density * ps;
        const double d2d_exact =
            d2d_coverage(thinned, beta, p.p_max_cell_w, p.p_max_d2d_w, cfg.cov_rel_tol);
        const double d2d_approx =
            d2d_coverage_approx(thinned, beta, p.p_max_cell_w, p.p_max_d2d_w);

        const double tc = transmission_capacity(beta, p);

        os << beta_db << ',' << cov_exact << ',' << cov_closed << ',' << cov_lb << ','
           << d2d_exact << ',' << d2d_approx << ',' << tc << ',' << sum_rate << "\n";
    }
}

void cmd_simulate(const RunConfig& cfg, std::ostream& os) {
    const ExperimentReport report = run_experiment(cfg.spec);
    write_report_csv(os, cfg.spec, report);
}

double cmd_compare(const RunConfig& cfg, std::ostream& csv_os, std::ostream& summary_os) {
    const ExperimentReport report = run_experiment(cfg.spec);
    write_report_csv(csv_os, cfg.spec, report);
    const CompareSummary s = compare_report(report, cfg.spec.scheme);
    summary_os.precision(6);
    summary_os << "scheme: " << scheme_name(cfg.spec.scheme) << "\n";
    summary_os << "max analytic-vs-simulated gap: " << s.max_gap << "\n";
    summary_os << "CI containment fraction: " << s.containment << "\n";
    return s.containment;
}

void cmd_sweep(const RunConfig& cfg, const std::string& key,
               const std::vector<std::string>& values, const std::string& mode,
               std::ostream& os) {
    if (mode != "analyze" && mode != "simulate")
        throw ConfigError("sweep mode must be analyze or simulate: " + mode);
    if (values.empty()) throw ConfigError("sweep needs at least one value");

    bool first = true;
    for (const std::string& v : values) {
        RunConfig run = cfg;
        apply_assignment(run, key, v);
        std::ostringstream sub;
        if (mode == "analyze")
            cmd_analyze(run, sub);
        else
            cmd_simulate(run, sub);

        std::istringstream rows(sub.str());
        std::string line;
        bool header = true;
        while (std::getline(rows, line)) {
            if (header) {
                if (first) os << "sweep_key,sweep_value," << line << "\n";
                header = false;
                continue;
            }
            os << key << ',' << v << ',' << line << "\n";
        }
        first = false;
    }
}

} // namespace d2d::cli
