#pragma once

#include <stdexcept>

#include "d2d/params.hpp"

namespace d2d {

// Raised when adaptive quadrature cannot reach the requested tolerance.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Coefficient bundle shared by the coverage / rate expressions.
struct CoverageCoefficients {
    double a1 = 0.0;         // noise * beta_cell
    double a2 = 0.0;         // pi lambda beta_cell^(2/a) M / sinc(2/a)
    double b1 = 0.0;         // noise * beta_d2d
    double b2 = 0.0;         // pi lambda beta_d2d^(2/a) M / sinc(2/a)
    double kappa = 0.0;      // (P_max,c/P_max,d)^(2/a) (d_kk / (128R/45pi))^2
    double beta_tilde = 0.0; // [sinc(2/a) / (pi lambda d_kk^2)]^(a/2)
};
CoverageCoefficients coverage_coefficients(const SystemParams& params, double d2d_moment);

// Laplace transform of PPP shot noise with i.i.d. marks:
// exp(-pi lambda E[p^(2/a)] s^(2/a) / sinc(2/a)).
double laplace_ppp(double s, double lambda, double alpha, double moment);

// Uplink power distribution kinds supported by the coverage integrals.
struct P0Distribution {
    enum class Kind { Constant, OnOff };
    Kind kind = Kind::Constant;
    double power = 0.0;   // constant level, or the on-state power
    double on_prob = 1.0; // transmit probability for OnOff

    static P0Distribution constant(double p) { return {Kind::Constant, p, 1.0}; }
    static P0Distribution on_off(double p, double prob) { return {Kind::OnOff, p, prob}; }
};

// Cellular coverage probability E_X[exp(-a1 X - a2 X^(2/a))] with
// X = d^alpha / p0, the distance uniform in the cell, by quadrature.
double cell_coverage_exact(const SystemParams& params, const P0Distribution& p0,
                           double d2d_moment, double beta0, double rel_tol = 1e-8);

// Closed form for alpha = 4 in the interference-limited regime with
// constant uplink power and on-off D2D powers: (1 - e^-c)/c.
double cell_coverage_closed_alpha4(double lambda, double p_s, double p_max_d2d, double p0,
                                   double cell_radius, double beta0);

// Jensen lower bound on the exact coverage; e_inv_p0 = E[1/p0].
double cell_coverage_lower_bound(const SystemParams& params, double d2d_moment, double beta0,
                                 double e_inv_p0);

// Three-regime closed form of the cellular coverage under the
// distance-aware on-off uplink policy at distance d (interference-limited).
double cell_coverage_optimal_onoff(double d, const SystemParams& params, double d2d_moment);

// Coverage of the typical D2D link at fixed pair distance and fixed powers;
// expectation over the cross-interferer distance by quadrature.
double d2d_coverage(const SystemParams& params, double beta, double p0, double pk,
                    double rel_tol = 1e-8);

// Same with the cross-term expectation replaced by its mean-distance
// surrogate; closed form, no quadrature.
double d2d_coverage_approx(const SystemParams& params, double beta, double p0, double pk);

// Ergodic rate of the typical D2D link under thinned density lambda_t and
// uplink-to-D2D power ratio p_ratio, in bits/s/Hz.
struct ErgodicRate {
    double exact = 0.0;
    double approx = 0.0;
    bool unbounded = false; // no interference and no noise: the integral diverges
};
ErgodicRate d2d_ergodic_rate(const SystemParams& params, double lambda_t, double p_ratio,
                             double rel_tol = 1e-7);

// Two-regime transmission capacity at target SINR beta under the optimal
// transmit probability.
double transmission_capacity(double beta, const SystemParams& params);

// Sum rate of D2D links: integral of the transmission capacity envelope.
double d2d_sum_rate(const SystemParams& params, double rel_tol = 1e-6);

} // namespace d2d
