#pragma once

#include <optional>

#include "d2d/netmodel.hpp"
#include "d2d/params.hpp"
#include "d2d/rng.hpp"

namespace d2d {

// Binary D2D power policy: transmit at p_on iff the direct-link gain
// exceeds g_min.  Under unit-mean exponential fading the implied transmit
// probability is p_s = exp(-g_min d_kk^alpha).
struct OnOffPolicy {
    double g_min = 0.0;
    double p_s = 1.0;
    double p_on = 0.0;
};

OnOffPolicy make_onoff_policy(double g_min, double d_kk, double alpha, double p_on);
OnOffPolicy policy_from_ps(double p_s, double d_kk, double alpha, double p_on);

// Strict '>' at the threshold; the boundary case transmits nothing.
double on_off_decision(double direct_gain, const OnOffPolicy& policy);

// Sum-rate-optimal transmit probability: min{ sinc(2/a) / (pi l b^(2/a) d^2), 1 }.
double optimal_ps(double lambda, double beta, double d_kk, double alpha);

// Threshold realizing a target transmit probability: -ln(p_s) / d^alpha.
double optimal_threshold(double p_s_star, double d_kk, double alpha);

// Target SINR below which optimal_ps saturates at 1 (all links transmit).
double beta_tilde(double lambda, double d_kk, double alpha);

// E[p_k^(2/alpha)] of the on-off D2D power distribution.  Keeps the
// thinned-density vs power-moment bookkeeping in one place: p_k is
// {0, p_max} with P[on] = p_s, so the moment is p_s * p_max^(2/alpha).
double d2d_power_moment(double p_s, double p_max_d2d, double alpha);

// Distance-aware on-off policy of the cellular user.
struct CellularOnOff {
    double d = 0.0;       // distance to the BS
    double p_star = 0.0;  // on-state power
    double tx_prob = 1.0; // P_avg / p_star
    double p_tilde = 0.0; // unconstrained optimizer
};

// Closed form for the interference-limited regime:
//   p~0(d) = (2 M / (alpha sinc(2/alpha)))^(alpha/2) E[K]^(alpha/2) beta0 (d/R)^alpha,
//   p0*(d) = max{ min{p~0, P_max,c}, P_avg,c }.
// M = E[p_k^(2/alpha)].  Used as an approximation when noise_w > 0.
CellularOnOff cellular_power_policy(double d, const SystemParams& params, double d2d_moment);

// Numerical maximizer of phi(p)/p by golden-section search on log p,
// valid for noise_w >= 0; validation companion to the closed form.
double exact_onoff_power(double d, const SystemParams& params, double d2d_moment);

// Build the transmit power profile for one realization: each D2D link
// applies on_off_decision to its own direct gain; the cellular entry is
// either the fixed power or an on-off draw from cell_policy.
PowerProfile apply_distributed(const NetworkRealization& real, const SystemParams& params,
                               const OnOffPolicy& policy, double fixed_p0);
PowerProfile apply_distributed(const NetworkRealization& real, const SystemParams& params,
                               const OnOffPolicy& policy, const CellularOnOff& cell_policy,
                               RandomStream& rng);

} // namespace d2d
