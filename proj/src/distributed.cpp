#include "d2d/distributed.hpp"

#include <algorithm>
#include <cmath>

#include "d2d/units.hpp"

namespace d2d {

OnOffPolicy make_onoff_policy(double g_min, double d_kk, double alpha, double p_on) {
    OnOffPolicy p;
    p.g_min = g_min;
    p.p_s = std::exp(-g_min * std::pow(d_kk, alpha));
    p.p_on = p_on;
    return p;
}

OnOffPolicy policy_from_ps(double p_s, double d_kk, double alpha, double p_on) {
    OnOffPolicy p;
    p.g_min = optimal_threshold(p_s, d_kk, alpha);
    p.p_s = p_s;
    p.p_on = p_on;
    return p;
}

double on_off_decision(double direct_gain, const OnOffPolicy& policy) {
    return direct_gain > policy.g_min ? policy.p_on : 0.0;
}

double optimal_ps(double lambda, double beta, double d_kk, double alpha) {
    const double load = M_PI * lambda * std::pow(beta, 2.0 / alpha) * d_kk * d_kk;
    if (load <= 0.0) return 1.0;
    return std::min(sinc(2.0 / alpha) / load, 1.0);
}

double optimal_threshold(double p_s_star, double d_kk, double alpha) {
    return -std::log(p_s_star) / std::pow(d_kk, alpha);
}

double beta_tilde(double lambda, double d_kk, double alpha) {
    return std::pow(sinc(2.0 / alpha) / (M_PI * lambda * d_kk * d_kk), alpha / 2.0);
}

double d2d_power_moment(double p_s, double p_max_d2d, double alpha) {
    return p_s * std::pow(p_max_d2d, 2.0 / alpha);
}

CellularOnOff cellular_power_policy(double d, const SystemParams& params, double d2d_moment) {
    const double alpha = params.pathloss_exp;
    CellularOnOff out;
    out.d = d;
    out.p_tilde = std::pow(2.0 * d2d_moment / (alpha * sinc(2.0 / alpha)), alpha / 2.0) *
                  std::pow(params.expected_k(), alpha / 2.0) * params.beta_cell *
                  std::pow(d / params.cell_radius_m, alpha);
    out.p_star = std::max(std::min(out.p_tilde, params.p_max_cell_w), params.p_avg_cell_w);
    out.tx_prob = params.p_avg_cell_w / out.p_star;
    return out;
}

double exact_onoff_power(double d, const SystemParams& params, double d2d_moment) {
    const double alpha = params.pathloss_exp;
    const double a1 = params.noise_w * params.beta_cell;
    const double a2 = M_PI * params.d2d_density * std::pow(params.beta_cell, 2.0 / alpha) *
                      d2d_moment / sinc(2.0 / alpha);
    // maximize phi(p)/p = exp(-a1 d^a / p - a2 d^2 p^(-2/a)) / p over log p
    auto neg_obj = [&](double logp) {
        const double p = std::exp(logp);
        return -(std::exp(-a1 * std::pow(d, alpha) / p -
                          a2 * d * d * std::pow(p, -2.0 / alpha)) /
                 p);
    };
    double lo = std::log(1e-6 * params.p_avg_cell_w);
    double hi = std::log(params.p_max_cell_w);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = neg_obj(x1);
    double f2 = neg_obj(x2);
    while (hi - lo > 1e-10 * std::max(1.0, std::fabs(hi))) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = neg_obj(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = neg_obj(x2);
        }
    }
    return std::exp(0.5 * (lo + hi));
}

PowerProfile apply_distributed(const NetworkRealization& real, const SystemParams& params,
                               const OnOffPolicy& policy, double fixed_p0) {
    const int k = real.num_d2d();
    PowerProfile p(k + 1);
    p(0) = fixed_p0;
    for (int i = 1; i <= k; ++i)
        p(i) = on_off_decision(channel_gain(real, i, i, params.pathloss_exp), policy);
    return p;
}

PowerProfile apply_distributed(const NetworkRealization& real, const SystemParams& params,
                               const OnOffPolicy& policy, const CellularOnOff& cell_policy,
                               RandomStream& rng) {
    const double p0 = rng.uniform() < cell_policy.tx_prob ? cell_policy.p_star : 0.0;
    return apply_distributed(real, params, policy, p0);
}

} // namespace d2d
