#include "d2d/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include <Eigen/Core>

#include "d2d/analysis.hpp"
#include "d2d/centralized.hpp"
#include "d2d/distributed.hpp"
#include "d2d/netmodel.hpp"
#include "d2d/units.hpp"

namespace d2d {

namespace {

constexpr double kZ995 = 2.5758293035489004; // two-sided 99% normal quantile

SystemParams with_beta(const SystemParams& base, double beta_lin) {
    SystemParams p = base;
    p.beta_cell = beta_lin;
    p.beta_d2d = beta_lin;
    return p;
}

double sinr_from_gains(const Eigen::MatrixXd& g, const PowerProfile& p, int rx, double noise_w) {
    const double signal = g(rx, rx) * p(rx);
    const double denom = g.row(rx).dot(p) - signal + noise_w;
    if (denom == 0.0) return signal > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return signal / denom;
}

// grid for the adaptive-threshold sum-rate integral: {0} plus log-spaced
// SINR levels; fixed so that reports are reproducible byte for byte
std::vector<double> rate_grid() {
    std::vector<double> g{0.0};
    const double lo = -2.0, hi = 4.5;
    const int per_decade = 16;
    const int n = static_cast<int>((hi - lo) * per_decade) + 1;
    g.reserve(n + 1);
    for (int i = 0; i < n; ++i) g.push_back(std::pow(10.0, lo + i / double(per_decade)));
    return g;
}

struct DropResult {
    std::vector<double> cell_cov;   // per beta, 0/1
    std::vector<int> active;        // transmitting in-cell links
    std::vector<int> covered;       // of those, SINR >= beta
    std::vector<double> rate_sum;   // sum log2(1+SINR) over transmitting in-cell links
    int total_in_cell = 0;
    double adaptive_rate = 0.0;
};

struct GridContext {
    std::vector<double> beta_lin;
    std::vector<double> ps_at_beta; // distributed transmit probability per grid point
    std::vector<double> xgrid;      // rate-integral abscissae
    std::vector<double> ps_at_x;
};

DropResult simulate_drop(const ExperimentSpec& spec, const GridContext& ctx, std::uint64_t drop) {
    const SystemParams& prm = spec.params;
    const double alpha = prm.pathloss_exp;
    RandomStream rng(spec.seed, drop);
    const NetworkRealization real = sample_realization(prm, rng);
    const int k = real.num_d2d();
    const Eigen::MatrixXd g = gain_matrix(real, alpha);

    std::vector<int> in_cell;
    for (int j = 1; j <= k; ++j)
        if (real.d2d_tx_pos[j - 1].norm() <= prm.cell_radius_m) in_cell.push_back(j);

    const int nb = static_cast<int>(ctx.beta_lin.size());
    DropResult out;
    out.cell_cov.assign(nb, 0.0);
    out.active.assign(nb, 0);
    out.covered.assign(nb, 0);
    out.rate_sum.assign(nb, 0.0);
    out.total_in_cell = static_cast<int>(in_cell.size());

    for (int bi = 0; bi < nb; ++bi) {
        const double beta = ctx.beta_lin[bi];
        PowerProfile p;
        switch (spec.scheme) {
            case Scheme::NoControl: {
                p = PowerProfile::Constant(k + 1, prm.p_max_d2d_w);
                p(0) = prm.p_max_cell_w;
                break;
            }
            case Scheme::Distributed: {
                const OnOffPolicy policy =
                    policy_from_ps(ctx.ps_at_beta[bi], prm.d2d_link_dist_m, alpha, prm.p_max_d2d_w);
                double p0 = prm.p_max_cell_w;
                if (spec.cell_onoff) {
                    const CellularOnOff cp = cellular_power_policy(
                        real.cell_user_pos.norm(), with_beta(prm, beta),
                        d2d_power_moment(policy.p_s, prm.p_max_d2d_w, alpha));
                    p0 = rng.uniform() < cp.tx_prob ? cp.p_star : 0.0;
                }
                p = PowerProfile::Zero(k + 1);
                p(0) = p0;
                for (int j = 1; j <= k; ++j) p(j) = on_off_decision(g(j, j), policy);
                break;
            }
            case Scheme::Centralized: {
                const ControlOutcome outcome = centralized_control(g, with_beta(prm, beta));
                p = outcome.profile;
                break;
            }
        }

        out.cell_cov[bi] = sinr_from_gains(g, p, 0, prm.noise_w) >= beta ? 1.0 : 0.0;
        for (int j : in_cell) {
            if (p(j) <= 0.0) continue;
            ++out.active[bi];
            const double sinr = sinr_from_gains(g, p, j, prm.noise_w);
            if (sinr >= beta) ++out.covered[bi];
            out.rate_sum[bi] += std::log2(1.0 + sinr);
        }
    }

    // Adaptive-threshold sum rate: at every SINR level x the on-off
    // threshold is re-optimized and the typical-link ccdf is measured with
    // every in-cell link tagged in turn (its own fading unconditioned, the
    // interferer field thinned by the threshold rule).  The tagged count,
    // weighted by the transmit probability, integrates against 1/(1+x).
    if (k > 0 && !in_cell.empty()) {
        std::vector<double> interf(k + 1, 0.0);
        for (int j : in_cell) {
            double acc = g(j, 0) * prm.p_max_cell_w + prm.noise_w;
            for (int t = 1; t <= k; ++t)
                if (t != j) acc += g(j, t) * prm.p_max_d2d_w;
            interf[j] = acc;
        }
        std::vector<int> order(k); // all links, by direct fading ascending
        for (int j = 0; j < k; ++j) order[j] = j + 1;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return real.fading(a, a) < real.fading(b, b); });

        std::size_t removed = 0;
        double prev_f = 0.0, prev_x = 0.0;
        for (std::size_t i = 0; i < ctx.xgrid.size(); ++i) {
            const double x = ctx.xgrid[i];
            const double ps = ctx.ps_at_x[i];
            const double cut = -std::log(ps); // interferers off iff |h_kk|^2 <= cut
            while (removed < order.size() && real.fading(order[removed], order[removed]) <= cut) {
                const int gone = order[removed++];
                for (int j : in_cell)
                    if (j != gone) interf[j] -= g(j, gone) * prm.p_max_d2d_w;
            }
            double count = 0.0;
            for (int j : in_cell)
                if (g(j, j) * prm.p_max_d2d_w >= x * interf[j]) count += ps;
            const double f = count / (1.0 + x);
            if (i > 0) out.adaptive_rate += 0.5 * (prev_f + f) * (x - prev_x);
            prev_f = f;
            prev_x = x;
        }
    }
    return out;
}

} // namespace

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::NoControl: return "no_control";
        case Scheme::Centralized: return "centralized";
        case Scheme::Distributed: return "distributed";
    }
    return "unknown";
}

std::optional<Scheme> scheme_from_name(const std::string& name) {
    if (name == "no_control") return Scheme::NoControl;
    if (name == "centralized") return Scheme::Centralized;
    if (name == "distributed") return Scheme::Distributed;
    return std::nullopt;
}

void ExperimentSpec::validate() const {
    params.validate();
    if (n_drops < 1) throw std::invalid_argument("ExperimentSpec: n_drops must be >= 1");
    if (threads < 1) throw std::invalid_argument("ExperimentSpec: threads must be >= 1");
    if (beta_grid_db.empty()) throw std::invalid_argument("ExperimentSpec: empty beta grid");
    for (std::size_t i = 1; i < beta_grid_db.size(); ++i)
        if (!(beta_grid_db[i] > beta_grid_db[i - 1]))
            throw std::invalid_argument("ExperimentSpec: beta grid must be strictly increasing");
    if (fixed_gmin && fixed_ps)
        throw std::invalid_argument("ExperimentSpec: gmin and ps are mutually exclusive");
    if ((fixed_gmin || fixed_ps) && auto_optimal_ps)
        throw std::invalid_argument("ExperimentSpec: fixed policy conflicts with auto_optimal_ps");
}

Estimate coverage_estimator(double sum, double n) {
    Estimate e;
    if (n <= 0.0) return e;
    e.mean = sum / n;
    e.ci_halfwidth = kZ995 * std::sqrt(e.mean * (1.0 - e.mean) / n);
    return e;
}

Estimate coverage_estimator(const std::vector<double>& indicators) {
    double s = 0.0;
    for (double v : indicators) s += v;
    return coverage_estimator(s, static_cast<double>(indicators.size()));
}

Estimate mean_estimator(const std::vector<double>& values) {
    Estimate e;
    const double n = static_cast<double>(values.size());
    if (n <= 0.0) return e;
    double s = 0.0;
    for (double v : values) s += v;
    e.mean = s / n;
    if (n > 1.0) {
        double ss = 0.0;
        for (double v : values) ss += (v - e.mean) * (v - e.mean);
        e.ci_halfwidth = kZ995 * std::sqrt(ss / (n - 1.0) / n);
    }
    return e;
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const SystemParams& prm = spec.params;
    const double alpha = prm.pathloss_exp;

    GridContext ctx;
    ctx.beta_lin.reserve(spec.beta_grid_db.size());
    for (double db : spec.beta_grid_db) ctx.beta_lin.push_back(db_to_linear(db));
    for (double beta : ctx.beta_lin) {
        double ps = 1.0;
        if (spec.scheme == Scheme::Distributed) {
            if (spec.fixed_ps)
                ps = *spec.fixed_ps;
            else if (spec.fixed_gmin)
                ps = std::exp(-*spec.fixed_gmin * std::pow(prm.d2d_link_dist_m, alpha));
            else
                ps = optimal_ps(prm.d2d_density, beta, prm.d2d_link_dist_m, alpha);
        }
        ctx.ps_at_beta.push_back(ps);
    }
    ctx.xgrid = rate_grid();
    for (double x : ctx.xgrid)
        ctx.ps_at_x.push_back(optimal_ps(prm.d2d_density, x, prm.d2d_link_dist_m, alpha));

    // simulate drops (threaded; results stored per drop and reduced in
    // drop order so the report does not depend on scheduling)
    const int n = spec.n_drops;
    std::vector<DropResult> results(n);
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (int d; (d = next.fetch_add(1)) < n;) {
            try {
                results[d] = simulate_drop(spec, ctx, static_cast<std::uint64_t>(d));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < spec.threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);

    ExperimentReport report;
    const int nb = static_cast<int>(ctx.beta_lin.size());
    report.rows.resize(nb);
    for (int bi = 0; bi < nb; ++bi) {
        BetaRow& row = report.rows[bi];
        row.beta_db = spec.beta_grid_db[bi];
        row.beta_lin = ctx.beta_lin[bi];

        double cell_sum = 0.0;
        long total = 0, active = 0, covered = 0;
        std::vector<double> rates(n);
        for (int d = 0; d < n; ++d) {
            cell_sum += results[d].cell_cov[bi];
            total += results[d].total_in_cell;
            active += results[d].active[bi];
            covered += results[d].covered[bi];
            rates[d] = results[d].rate_sum[bi];
        }
        row.cell_cov = coverage_estimator(cell_sum, n);
        row.d2d_cov_uncond = coverage_estimator(covered, static_cast<double>(total));
        row.d2d_cov_active = coverage_estimator(covered, static_cast<double>(active));
        row.admitted_frac = total > 0 ? static_cast<double>(active) / total : 0.0;
        row.mean_active = static_cast<double>(active) / n;
        row.d2d_rate = mean_estimator(rates);

        // analytic references: fixed uplink power, thinned D2D density
        const double beta = ctx.beta_lin[bi];
        const double ps = ctx.ps_at_beta[bi];
        const double moment = d2d_power_moment(ps, prm.p_max_d2d_w, alpha);
        row.cell_cov_analytic = cell_coverage_exact(
            prm, P0Distribution::constant(prm.p_max_cell_w), moment, beta);
        SystemParams thinned = prm;
        thinned.d2d_density = prm.d2d_density * ps;
        row.d2d_cov_analytic =
            d2d_coverage(thinned, beta, prm.p_max_cell_w, prm.p_max_d2d_w);
    }

    std::vector<double> adaptive(n);
    for (int d = 0; d < n; ++d) adaptive[d] = results[d].adaptive_rate;
    report.sum_rate_sim = mean_estimator(adaptive);
    report.sum_rate_analytic = d2d_sum_rate(prm);

    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

CompareSummary compare_report(const ExperimentReport& report, Scheme scheme) {
    CompareSummary s;
    int checks = 0, inside = 0;
    for (const BetaRow& row : report.rows) {
        const double cg = std::fabs(row.cell_cov_analytic - row.cell_cov.mean);
        s.cell_gap.push_back(cg);
        s.max_gap = std::max(s.max_gap, cg);
        ++checks;
        if (cg <= row.cell_cov.ci_halfwidth) ++inside;
        if (scheme != Scheme::Centralized) {
            const double dg = std::fabs(row.d2d_cov_analytic - row.d2d_cov_active.mean);
            s.d2d_gap.push_back(dg);
            s.max_gap = std::max(s.max_gap, dg);
            ++checks;
            if (dg <= row.d2d_cov_active.ci_halfwidth) ++inside;
        }
    }
    s.containment = checks > 0 ? static_cast<double>(inside) / checks : 1.0;
    return s;
}

void write_report_csv(std::ostream& os, const ExperimentSpec& spec,
                      const ExperimentReport& report) {
    os.precision(12);
    os << "beta_db,beta_lin,cell_cov_analytic,cell_cov_sim,cell_cov_ci,"
          "d2d_cov_analytic,d2d_cov_sim,d2d_cov_ci,d2d_cov_active_sim,d2d_cov_active_ci,"
          "admitted_frac,mean_active,d2d_rate_sim,d2d_rate_ci,"
          "sum_rate_sim,sum_rate_ci,sum_rate_analytic,scheme,drops,seed\n";
    for (const BetaRow& r : report.rows) {
        os << r.beta_db << ',' << r.beta_lin << ',' << r.cell_cov_analytic << ','
           << r.cell_cov.mean << ',' << r.cell_cov.ci_halfwidth << ',' << r.d2d_cov_analytic
           << ',' << r.d2d_cov_uncond.mean << ',' << r.d2d_cov_uncond.ci_halfwidth << ','
           << r.d2d_cov_active.mean << ',' << r.d2d_cov_active.ci_halfwidth << ','
           << r.admitted_frac << ',' << r.mean_active << ',' << r.d2d_rate.mean << ','
           << r.d2d_rate.ci_halfwidth << ',' << report.sum_rate_sim.mean << ','
           << report.sum_rate_sim.ci_halfwidth << ',' << report.sum_rate_analytic << ','
           << scheme_name(spec.scheme) << ',' << spec.n_drops << ',' << spec.seed << "\n";
    }
}

} // namespace d2d
