// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "d2d/analysis.hpp"
#include "d2d/centralized.hpp"
#include "d2d/cli.hpp"
#include "d2d/config.hpp"
#include "d2d/distributed.hpp"
#include "d2d/montecarlo.hpp"
#include "d2d/netmodel.hpp"
#include "d2d/rng.hpp"
#include "d2d/spectral.hpp"
#include "d2d/units.hpp"
#include "test_support.hpp"

using namespace d2d;

namespace {

int g_failures = 0;

class Criterion {
  public:
    explicit Criterion(std::string label) : label_(std::move(label)) {}
    void expect(bool ok, const std::string& detail) {
        if (!ok) {
            ok_ = false;
            std::printf("    failed: %s\n", detail.c_str());
        }
    }
    void note(const std::string& text) { std::printf("    %s\n", text.c_str()); }
    ~Criterion() {
        std::printf("[%s] %s\n", ok_ ? "PASS" : "FAIL", label_.c_str());
        if (!ok_) ++g_failures;
    }

  private:
    std::string label_;
    bool ok_ = true;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

SystemParams table_params(double lambda) {
    SystemParams p;
    p.d2d_density = lambda;
    return p;
}

// ---------------------------------------------------------------------

void criterion1_sum_rate() {
    Criterion c("1. sum-rate table: analytic within 1%, simulated within 5%, sim above analytic");
    const double lambdas[3] = {1e-5, 3e-5, 5e-5};
    const double analytic_ref[3] = {13.63, 26.29, 32.54};
    const double sim_ref[3] = {13.98, 27.83, 33.93};
    for (int i = 0; i < 3; ++i) {
        const SystemParams prm = table_params(lambdas[i]);
        const double analytic = d2d_sum_rate(prm);
        c.expect(std::fabs(analytic - analytic_ref[i]) / analytic_ref[i] < 0.01,
                 fmt("analytic rate %.4f vs %.2f at lambda %.0e", analytic, analytic_ref[i],
                     lambdas[i]));

        ExperimentSpec spec;
        spec.params = prm;
        // the published rate table is consistent with cell-disk drops only
        spec.params.drop_margin_m = 0.0;
        spec.scheme = Scheme::Distributed;
        spec.beta_grid_db = {0.0}; // the sum-rate estimator runs on its own grid
        spec.n_drops = 1000;
        spec.seed = 20240501;
        spec.threads = 2;
        const auto t0 = std::chrono::steady_clock::now();
        const ExperimentReport rep = run_experiment(spec);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const double sim = rep.sum_rate_sim.mean;
        c.note(fmt("lambda %.0e: analytic %.3f", lambdas[i], analytic) +
               fmt(", simulated %.3f +- %.3f", sim, rep.sum_rate_sim.ci_halfwidth) +
               fmt(", %.1f s", secs));
        c.expect(std::fabs(sim - sim_ref[i]) / sim_ref[i] < 0.05,
                 fmt("simulated rate %.4f vs %.2f", sim, sim_ref[i]));
        c.expect(sim > analytic, fmt("gap pattern: sim %.4f should exceed analytic %.4f", sim,
                                     analytic));
        c.expect(secs < 120.0, fmt("runtime %.1f s exceeds 120 s", secs));
    }
}

void criterion2_example2() {
    Criterion c("2. three-regime on-off coverage triple and policy coefficient");
    SystemParams p;
    p.d2d_density = 39.0 / (M_PI * 500.0 * 500.0);
    p.p_avg_cell_w = 0.1;
    p.p_max_cell_w = 0.2;
    p.beta_cell = 4.0;
    p.noise_w = 0.0;
    const double moment = 0.01;
    const double mid = cell_coverage_optimal_onoff(250.0, p, moment);
    const double edge_mid = cell_coverage_optimal_onoff(350.0, p, moment);
    const double edge = cell_coverage_optimal_onoff(500.0, p, moment);
    c.note(fmt("coverage(R/2) = %.4f, coverage(0.7R) = %.4f, coverage(R) = %.4f", mid, edge_mid,
               edge));
    c.expect(std::fabs(mid - 0.743) < 1e-3, fmt("coverage(R/2) %.5f vs 0.743", mid));
    c.expect(std::fabs(edge_mid - 0.3298) < 1e-3, fmt("coverage(0.7R) %.5f vs 0.3298", edge_mid));
    c.expect(std::fabs(edge - 0.216) < 1e-3, fmt("coverage(R) %.5f vs 0.216", edge));
    const double coeff = cellular_power_policy(p.cell_radius_m, p, moment).p_tilde;
    c.expect(std::fabs(coeff - 0.375) / 0.375 < 0.01, fmt("coefficient %.5f vs 0.375", coeff));
}

void criterion3_fig2() {
    Criterion c("3. uplink coverage curve inside the simulated 99% CI at every grid point");
    for (double lambda : {2e-5, 5e-5}) {
        ExperimentSpec spec;
        spec.params = table_params(lambda);
        spec.params.p_max_d2d_w = 2e-4; // boosted D2D peak power for this figure
        spec.scheme = Scheme::Distributed;
        spec.auto_optimal_ps = false;
        spec.fixed_ps = 0.5;
        for (double b = -6.0; b <= 21.0 + 1e-9; b += 1.5) spec.beta_grid_db.push_back(b);
        spec.n_drops = 1000;
        spec.seed = 777;
        spec.threads = 2;
        const ExperimentReport rep = run_experiment(spec);
        double worst = 0.0;
        int misses = 0;
        for (const BetaRow& row : rep.rows) {
            const double closed = cell_coverage_closed_alpha4(
                lambda, 0.5, spec.params.p_max_d2d_w, spec.params.p_max_cell_w,
                spec.params.cell_radius_m, row.beta_lin);
            const double gap = std::fabs(closed - row.cell_cov.mean);
            worst = std::max(worst, gap - row.cell_cov.ci_halfwidth);
            if (gap > row.cell_cov.ci_halfwidth) {
                ++misses;
                c.expect(false, fmt("lambda %.0e: beta %.1f dB outside CI", lambda, row.beta_db) +
                                    fmt(" (gap %.4f, ci %.4f)", gap, row.cell_cov.ci_halfwidth));
            }
        }
        c.note(fmt("lambda %.0e: worst gap-minus-ci %.4f, misses %d", lambda, worst,
                   double(misses)));
    }
}

void criterion4_fig3() {
    Criterion c("4. D2D coverage: quadrature within 0.01, closed approximation within 0.03");
    for (double lambda : {2e-5, 5e-5}) {
        ExperimentSpec spec;
        spec.params = table_params(lambda);
        spec.scheme = Scheme::NoControl;
        for (double b = -6.0; b <= 21.0 + 1e-9; b += 1.5) spec.beta_grid_db.push_back(b);
        spec.n_drops = 4000;
        spec.seed = 31337;
        spec.threads = 2;
        const ExperimentReport rep = run_experiment(spec);
        double worst_exact = 0.0, worst_approx = 0.0;
        for (const BetaRow& row : rep.rows) {
            const double exact = d2d_coverage(spec.params, row.beta_lin,
                                              spec.params.p_max_cell_w, spec.params.p_max_d2d_w);
            const double approx = d2d_coverage_approx(
                spec.params, row.beta_lin, spec.params.p_max_cell_w, spec.params.p_max_d2d_w);
            const double sim = row.d2d_cov_uncond.mean;
            worst_exact = std::max(worst_exact, std::fabs(exact - sim));
            worst_approx = std::max(worst_approx, std::fabs(approx - sim));
            c.expect(std::fabs(exact - sim) <= 0.01,
                     fmt("lambda %.0e beta %.1f dB: |quad - sim| = %.4f > 0.01", lambda,
                         row.beta_db, std::fabs(exact - sim)));
            c.expect(std::fabs(approx - sim) <= 0.03,
                     fmt("lambda %.0e beta %.1f dB: |approx - sim| = %.4f > 0.03", lambda,
                         row.beta_db, std::fabs(approx - sim)));
        }
        c.note(fmt("lambda %.0e: max |quad-sim| %.4f, max |approx-sim| %.4f", lambda, worst_exact,
                   worst_approx));
    }
}

void criterion5_centralized() {
    Criterion c("5. centralized solver vs grid oracle; admitted fraction 0.48 +- 0.05 at 3 dB");
    RandomStream rng(1812);
    SystemParams p;
    p.beta_cell = db_to_linear(3.0);
    p.beta_d2d = db_to_linear(3.0);
    int oracle_checked = 0;
    for (int inst = 0; inst < 500; ++inst) {
        const int k = 1 + static_cast<int>(rng.uniform() * 6.0); // 1..6
        NetworkRealization real;
        real.cell_user_pos = rng.uniform_disk(p.cell_radius_m);
        for (int i = 0; i < k; ++i) {
            const Eigen::Vector2d tx = rng.uniform_disk(p.drop_radius_m());
            real.d2d_tx_pos.push_back(tx);
            real.d2d_rx_pos.push_back(rng.isotropic_offset(tx, p.d2d_link_dist_m));
        }
        real.fading.resize(k + 1, k + 1);
        for (int r = 0; r <= k; ++r)
            for (int t = 0; t <= k; ++t) real.fading(r, t) = rng.exponential();

        ConstraintSystem cs = build_constraints(real, p);
        if (!is_feasible(cs)) {
            cs = admission_control(cs);
            c.expect(is_feasible(cs), "admission left an infeasible system");
            continue; // oracle comparison targets natively feasible instances
        }
        Eigen::VectorXd sol;
        try {
            sol = solve_power(cs);
        } catch (const CapInfeasibleError&) {
            continue;
        }
        PowerProfile prof = PowerProfile::Zero(k + 1);
        for (int i = 0; i < cs.size(); ++i) prof(cs.active[i]) = sol(i);
        const double lp_sinr = sinr_cellular(real, prof, p.pathloss_exp, p.noise_w);
        c.expect(lp_sinr >= p.beta_cell * (1.0 - 1e-6), "cellular target violated");
        for (int j = 1; j <= k; ++j)
            c.expect(sinr_d2d(j, real, prof, p.pathloss_exp, p.noise_w) >=
                         p.beta_d2d * (1.0 - 1e-6),
                     "D2D target violated");

        // grid oracle: no feasible grid point may beat the LP
        const int steps = k <= 3 ? 12 : 4;
        std::vector<int> idx(k + 1, 0);
        PowerProfile q(k + 1);
        double best = -1.0;
        for (;;) {
            q(0) = p.p_max_cell_w * idx[0] / steps;
            for (int j = 1; j <= k; ++j) q(j) = p.p_max_d2d_w * idx[j] / steps;
            const double c0 = sinr_cellular(real, q, p.pathloss_exp, p.noise_w);
            if (c0 >= p.beta_cell) {
                bool ok = true;
                for (int j = 1; j <= k && ok; ++j)
                    ok = sinr_d2d(j, real, q, p.pathloss_exp, p.noise_w) >= p.beta_d2d;
                if (ok) best = std::max(best, c0);
            }
            int carry = k;
            while (carry >= 0 && ++idx[carry] > steps) idx[carry--] = 0;
            if (carry < 0) break;
        }
        if (best > 0.0) {
            ++oracle_checked;
            c.expect(lp_sinr >= best * (1.0 - 1e-3),
                     fmt("grid beat the LP: %.6g vs %.6g", best, lp_sinr));
        }
    }
    c.note(fmt("oracle-comparable feasible instances: %.0f", double(oracle_checked)));
    c.expect(oracle_checked >= 200, "too few feasible instances for the oracle comparison");

    ExperimentSpec spec;
    spec.params = table_params(2e-5);
    spec.scheme = Scheme::Centralized;
    spec.beta_grid_db = {3.0};
    spec.n_drops = 1000;
    spec.seed = 5150;
    spec.threads = 2;
    const ExperimentReport rep = run_experiment(spec);
    const double frac = rep.rows[0].admitted_frac;
    c.note(fmt("admitted fraction at 3 dB: %.3f", frac));
    c.expect(std::fabs(frac - 0.48) <= 0.05, fmt("admitted fraction %.3f vs 0.48 +- 0.05", frac));
}

void criterion6_spectral() {
    Criterion c("6. spectral radius vs root-finding oracle; monotone admission traces");
    RandomStream rng(62831);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform() * 19.0); // 2..20
        Eigen::MatrixXd f(n, n);
        for (int r = 0; r < n; ++r)
            for (int t = 0; t < n; ++t) f(r, t) = rng.uniform();
        const double rho = spectral_radius(f);
        const double oracle = testing::det_bisection_rho(f);
        c.expect(std::fabs(rho - oracle) <= 1e-8 * std::max(1.0, oracle),
                 fmt("rho %.12g vs oracle %.12g (n = %.0f)", rho, oracle, double(n)));
    }

    SystemParams p = table_params(5e-5);
    p.beta_cell = db_to_linear(6.0);
    p.beta_d2d = db_to_linear(6.0);
    int traces = 0;
    for (std::uint64_t drop = 0; drop < 40; ++drop) {
        RandomStream drop_rng(94, drop);
        const NetworkRealization real = sample_realization(p, drop_rng);
        if (real.num_d2d() == 0) continue;
        const ControlOutcome out = centralized_control(real, p);
        for (std::size_t i = 1; i < out.rho_trace.size(); ++i)
            c.expect(out.rho_trace[i] <= out.rho_trace[i - 1] * (1.0 + 1e-9) + 1e-12,
                     "spectral radius rose after a removal");
        if (out.rho_trace.size() > 1) ++traces;
    }
    c.expect(traces > 0, "no admission trace exercised a removal");
    c.note(fmt("traces with removals: %.0f", double(traces)));
}

void criterion7_twopoint_optimality() {
    Criterion c("7. distance-aware on-off uplink power maximizes two-point coverage");
    RandomStream rng(271);
    SystemParams base;
    base.p_avg_cell_w = 0.1;
    base.p_max_cell_w = 0.2;
    base.noise_w = 0.0;
    const double moment = 0.01;
    for (int t = 0; t < 20; ++t) {
        SystemParams p = base;
        p.d2d_density = 5e-6 + rng.uniform() * 7.5e-5;
        p.beta_cell = std::pow(10.0, -0.6 + rng.uniform() * 2.1); // 0.25 .. ~31.6
        const double d = p.cell_radius_m * (0.05 + 0.95 * rng.uniform());
        const CellularOnOff policy = cellular_power_policy(d, p, moment);

        const double a2 = M_PI * p.d2d_density * std::pow(p.beta_cell, 2.0 / p.pathloss_exp) *
                          moment / sinc(2.0 / p.pathloss_exp);
        const int grid = 10000;
        const double lo = p.p_avg_cell_w, hi = p.p_max_cell_w;
        const double step = (hi - lo) / grid;
        double best_p = lo, best_v = -1.0;
        for (int i = 0; i <= grid; ++i) {
            const double power = lo + i * step;
            const double v = (p.p_avg_cell_w / power) *
                             std::exp(-a2 * d * d * std::pow(power, -2.0 / p.pathloss_exp));
            if (v > best_v) {
                best_v = v;
                best_p = power;
            }
        }
        c.expect(std::fabs(policy.p_star - best_p) <= step + 1e-12,
                 fmt("policy power %.6f vs grid argmax %.6f (step %.2e)", policy.p_star, best_p,
                     step));
    }
}

void criterion8_distributed_optimality() {
    Criterion c("8. transmit probability: first-order condition, thinning density, knee");
    RandomStream rng(555);
    for (int t = 0; t < 50; ++t) {
        const double lambda = 1e-6 + rng.uniform() * 1e-4;
        const double beta = std::pow(10.0, rng.uniform() * 3.0);
        const double d = 10.0 + rng.uniform() * 90.0;
        const double alpha = 2.5 + rng.uniform() * 3.5;
        const double ps = optimal_ps(lambda, beta, d, alpha);
        if (ps < 1.0) {
            const double foc = ps * M_PI * lambda * std::pow(beta, 2.0 / alpha) * d * d /
                               sinc(2.0 / alpha);
            c.expect(std::fabs(foc - 1.0) <= 1e-12, fmt("first-order residual %.3e", foc - 1.0));
        }
    }

    // empirical thinned density over 10^4 drops at a target above the knee
    SystemParams p = table_params(2e-5);
    const double beta = db_to_linear(18.0);
    const double ps = optimal_ps(p.d2d_density, beta, p.d2d_link_dist_m, p.pathloss_exp);
    const OnOffPolicy policy =
        policy_from_ps(ps, p.d2d_link_dist_m, p.pathloss_exp, p.p_max_d2d_w);
    double active = 0.0, mean_total = 0.0;
    const int drops = 10000;
    for (int i = 0; i < drops; ++i) {
        RandomStream drop_rng(8080, static_cast<std::uint64_t>(i));
        const NetworkRealization real = sample_realization(p, drop_rng);
        mean_total += real.num_d2d();
        const PowerProfile prof = apply_distributed(real, p, policy, p.p_max_cell_w);
        for (int k = 1; k <= real.num_d2d(); ++k)
            if (prof(k) > 0.0) active += 1.0;
    }
    const double area = M_PI * p.drop_radius_m() * p.drop_radius_m();
    const double density = active / drops / area;
    const double target = p.d2d_density * ps;
    const double se = std::sqrt(target * area / drops) / area; // Poisson count error
    c.note(fmt("active density %.4e vs lambda Ps %.4e (3 se = %.2e)", density, target, 3 * se));
    c.expect(std::fabs(density - target) <= 3.0 * se, "thinned density off by more than 3 se");

    // below the knee the distributed scheme is exactly no-control
    ExperimentSpec spec;
    spec.params = table_params(2e-5);
    spec.scheme = Scheme::Distributed;
    spec.beta_grid_db = {-6.0, 0.0, 6.0, 12.0}; // knee is at 12.16 dB
    spec.n_drops = 200;
    spec.seed = 1001;
    spec.threads = 2;
    const ExperimentReport dist = run_experiment(spec);
    spec.scheme = Scheme::NoControl;
    const ExperimentReport none = run_experiment(spec);
    for (std::size_t i = 0; i < dist.rows.size(); ++i) {
        c.expect(dist.rows[i].cell_cov.mean == none.rows[i].cell_cov.mean,
                 fmt("cellular coverage differs below the knee at %.1f dB",
                     dist.rows[i].beta_db));
        c.expect(dist.rows[i].d2d_cov_uncond.mean == none.rows[i].d2d_cov_uncond.mean,
                 fmt("D2D coverage differs below the knee at %.1f dB", dist.rows[i].beta_db));
    }
}

void criterion9_bound_ordering() {
    Criterion c("9. Jensen lower bound below the exact coverage on a 5x5 grid");
    SystemParams base = table_params(2e-5);
    const double betas[5] = {0.0, db_to_linear(-6.0), db_to_linear(0.0), db_to_linear(9.0),
                             db_to_linear(21.0)};
    const double lambdas[5] = {5e-6, 1e-5, 2e-5, 4e-5, 8e-5};
    for (double lambda : lambdas) {
        for (double beta : betas) {
            SystemParams p = base;
            p.d2d_density = lambda;
            const double moment = d2d_power_moment(1.0, p.p_max_d2d_w, p.pathloss_exp);
            const double exact =
                cell_coverage_exact(p, P0Distribution::constant(p.p_max_cell_w), moment, beta);
            const double lb =
                cell_coverage_lower_bound(p, moment, beta, 1.0 / p.p_max_cell_w);
            if (beta == 0.0) {
                c.expect(lb == 1.0 && exact == 1.0, "zero target should give certain coverage");
            } else {
                c.expect(lb < exact,
                         fmt("bound %.6f not strictly below exact %.6f", lb, exact));
            }
        }
    }
}

void criterion10_determinism() {
    Criterion c("10. bit-identical CSV across one and four worker threads");
    RunConfig cfg = parse_config(
        "d2d_density = 2e-05\nscheme = distributed\nbeta_grid_db = -6:3:21\n"
        "drops = 300\nseed = 90210\n");
    std::ostringstream one, four;
    cfg.spec.threads = 1;
    cli::cmd_simulate(cfg, one);
    cfg.spec.threads = 4;
    cli::cmd_simulate(cfg, four);
    c.expect(one.str() == four.str(), "thread count changed the CSV bytes");
    c.expect(!one.str().empty(), "empty report");
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion1_sum_rate();
    criterion2_example2();
    criterion3_fig2();
    criterion4_fig3();
    criterion5_centralized();
    criterion6_spectral();
    criterion7_twopoint_optimality();
    criterion8_distributed_optimality();
    criterion9_bound_ordering();
    criterion10_determinism();
    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
