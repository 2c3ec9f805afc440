#include "d2d/analysis.hpp"

#include <cmath>

#include "d2d/distributed.hpp"
#include "d2d/netmodel.hpp"
#include "d2d/quadrature.hpp"
#include "d2d/units.hpp"

namespace d2d {

namespace {

double checked(const QuadResult& q, const char* where) {
    if (!q.converged) throw NumericError(std::string(where) + ": quadrature did not converge");
    return q.value;
}

double kappa_of(const SystemParams& p) {
    const double mean_cross = crosslink_mean_dist(p.cell_radius_m);
    return std::pow(p.p_max_cell_w / p.p_max_d2d_w, 2.0 / p.pathloss_exp) *
           std::pow(p.d2d_link_dist_m / mean_cross, 2.0);
}

// E over the cross-interferer distance of 1 / (1 + ratio (d_kk/r)^alpha)
double cross_term(const SystemParams& p, double ratio, double rel_tol) {
    if (ratio <= 0.0) return 1.0;
    const double r_max = 2.0 * p.cell_radius_m;
    auto f = [&](double r) {
        const double frac = std::pow(p.d2d_link_dist_m / r, p.pathloss_exp);
        return dist_pdf_crosslink(r, p.cell_radius_m) / (1.0 + ratio * frac);
    };
    return checked(integrate(f, 0.0, r_max, rel_tol), "cross_term");
}

} // namespace

CoverageCoefficients coverage_coefficients(const SystemParams& p, double d2d_moment) {
    const double alpha = p.pathloss_exp;
    const double s = sinc(2.0 / alpha);
    CoverageCoefficients c;
    c.a1 = p.noise_w * p.beta_cell;
    c.a2 = M_PI * p.d2d_density * std::pow(p.beta_cell, 2.0 / alpha) * d2d_moment / s;
    c.b1 = p.noise_w * p.beta_d2d;
    c.b2 = M_PI * p.d2d_density * std::pow(p.beta_d2d, 2.0 / alpha) * d2d_moment / s;
    c.kappa = kappa_of(p);
    c.beta_tilde = beta_tilde(p.d2d_density, p.d2d_link_dist_m, alpha);
    return c;
}

double laplace_ppp(double s, double lambda, double alpha, double moment) {
    if (s <= 0.0 || lambda <= 0.0 || moment <= 0.0) return 1.0;
    return std::exp(-M_PI * lambda * moment * std::pow(s, 2.0 / alpha) / sinc(2.0 / alpha));
}

double cell_coverage_exact(const SystemParams& params, const P0Distribution& p0,
                           double d2d_moment, double beta0, double rel_tol) {
    if (beta0 <= 0.0) return 1.0;
    const double alpha = params.pathloss_exp;
    const double r_cell = params.cell_radius_m;
    const double a1 = params.noise_w * beta0;
    const double a2 =
        M_PI * params.d2d_density * std::pow(beta0, 2.0 / alpha) * d2d_moment / sinc(2.0 / alpha);

    auto disk_integral = [&](double power) {
        auto f = [&](double d) {
            const double x1 = a1 * std::pow(d, alpha) / power;
            const double x2 = a2 * d * d / std::pow(power, 2.0 / alpha);
            return std::exp(-x1 - x2) * 2.0 * d / (r_cell * r_cell);
        };
        return checked(integrate(f, 0.0, r_cell, rel_tol), "cell_coverage_exact");
    };

    switch (p0.kind) {
        case P0Distribution::Kind::Constant:
            return disk_integral(p0.power);
        case P0Distribution::Kind::OnOff:
            // the off atom never reaches the target
            return p0.on_prob * disk_integral(p0.power);
    }
    throw std::invalid_argument("cell_coverage_exact: unsupported p0 distribution");
}

double cell_coverage_closed_alpha4(double lambda, double p_s, double p_max_d2d, double p0,
                                   double cell_radius, double beta0) {
    const double c = M_PI * (lambda * p_s) * std::sqrt(beta0) * std::sqrt(p_max_d2d) *
                     cell_radius * cell_radius / (sinc(0.5) * std::sqrt(p0));
    if (c <= 0.0) return 1.0;
    return -std::expm1(-c) / c;
}

double cell_coverage_lower_bound(const SystemParams& params, double d2d_moment, double beta0,
                                 double e_inv_p0) {
    if (beta0 <= 0.0) return 1.0;
    const double alpha = params.pathloss_exp;
    const double r = params.cell_radius_m;
    const double a1 = params.noise_w * beta0;
    const double a2 =
        M_PI * params.d2d_density * std::pow(beta0, 2.0 / alpha) * d2d_moment / sinc(2.0 / alpha);
    const double w = 2.0 / (2.0 + alpha); // E[d^alpha] = w R^alpha in the cell
    return std::exp(-a1 * w * std::pow(r, alpha) * e_inv_p0 -
                    a2 * std::pow(w, 2.0 / alpha) * r * r * std::pow(e_inv_p0, 2.0 / alpha));
}

double cell_coverage_optimal_onoff(double d, const SystemParams& params, double d2d_moment) {
    const double alpha = params.pathloss_exp;
    const double beta0 = params.beta_cell;
    if (beta0 <= 0.0) return 1.0;
    // policy coefficient of the on-off uplink power, applied with the
    // quadratic distance scaling this closed form is calibrated with
    const double coeff = std::pow(2.0 * d2d_moment / (alpha * sinc(2.0 / alpha)), alpha / 2.0) *
                         std::pow(params.expected_k(), alpha / 2.0) * beta0;
    const double pt = coeff * std::pow(d / params.cell_radius_m, 2.0);
    const double p_avg = params.p_avg_cell_w;
    const double p_max = params.p_max_cell_w;
    if (pt >= p_max)
        return (p_avg / p_max) * std::exp(-pt * std::pow(p_max, -2.0 / alpha));
    if (pt <= p_avg) return std::exp(-pt * std::pow(p_avg, -2.0 / alpha));
    return p_avg * std::exp(-2.0 / alpha) / pt;
}

double d2d_coverage(const SystemParams& params, double beta, double p0, double pk,
                    double rel_tol) {
    if (beta <= 0.0) return 1.0;
    const double alpha = params.pathloss_exp;
    const double d = params.d2d_link_dist_m;
    const double noise_term =
        std::exp(-params.noise_w * beta * std::pow(d, alpha) / pk);
    const double intra =
        std::exp(-M_PI * params.d2d_density * std::pow(beta, 2.0 / alpha) * d * d /
                 sinc(2.0 / alpha));
    return noise_term * intra * cross_term(params, beta * p0 / pk, rel_tol);
}

double d2d_coverage_approx(const SystemParams& params, double beta, double p0, double pk) {
    if (beta <= 0.0) return 1.0;
    const double alpha = params.pathloss_exp;
    const double d = params.d2d_link_dist_m;
    const double noise_term =
        std::exp(-params.noise_w * beta * std::pow(d, alpha) / pk);
    const double intra =
        std::exp(-M_PI * params.d2d_density * std::pow(beta, 2.0 / alpha) * d * d /
                 sinc(2.0 / alpha));
    const double mean_cross = crosslink_mean_dist(params.cell_radius_m);
    const double cross =
        1.0 / (1.0 + std::pow(beta * p0 / pk, 2.0 / alpha) * d * d / (mean_cross * mean_cross));
    return noise_term * intra * cross;
}

ErgodicRate d2d_ergodic_rate(const SystemParams& params, double lambda_t, double p_ratio,
                             double rel_tol) {
    ErgodicRate out;
    if (lambda_t <= 0.0 && p_ratio <= 0.0) {
        // interference-free SIR: integral of 1/(1+x) diverges
        out.unbounded = true;
        return out;
    }
    const double alpha = params.pathloss_exp;
    const double d = params.d2d_link_dist_m;
    const double s = sinc(2.0 / alpha);
    const double kap = std::pow(p_ratio, 2.0 / alpha) *
                       std::pow(d / crosslink_mean_dist(params.cell_radius_m), 2.0);

    auto intra = [&](double x) {
        return std::exp(-M_PI * lambda_t * std::pow(x, 2.0 / alpha) * d * d / s);
    };
    auto exact_f = [&](double x) {
        return intra(x) * cross_term(params, x * p_ratio, rel_tol * 0.1) / (1.0 + x);
    };
    auto approx_f = [&](double x) {
        return intra(x) / ((1.0 + kap * std::pow(x, 2.0 / alpha)) * (1.0 + x));
    };
    out.exact = checked(integrate_to_inf(exact_f, 0.0, rel_tol), "d2d_ergodic_rate");
    out.approx = checked(integrate_to_inf(approx_f, 0.0, rel_tol), "d2d_ergodic_rate");
    return out;
}

double transmission_capacity(double beta, const SystemParams& params) {
    const double alpha = params.pathloss_exp;
    const double lambda = params.d2d_density;
    const double d = params.d2d_link_dist_m;
    const double r = params.cell_radius_m;
    const double s = sinc(2.0 / alpha);
    const double kap = kappa_of(params);
    const double bt = beta_tilde(lambda, d, alpha);
    const double rate_factor = std::log2(1.0 + beta) / (1.0 + kap * std::pow(beta, 2.0 / alpha));
    if (beta < bt) {
        return lambda * M_PI * r * r *
               std::exp(-M_PI * lambda * std::pow(beta, 2.0 / alpha) * d * d / s) * rate_factor;
    }
    return (s / std::exp(1.0)) * (r / d) * (r / d) * std::pow(beta, -2.0 / alpha) * rate_factor;
}

double d2d_sum_rate(const SystemParams& params, double rel_tol) {
    const double alpha = params.pathloss_exp;
    const double lambda = params.d2d_density;
    if (lambda <= 0.0) return 0.0;
    const double d = params.d2d_link_dist_m;
    const double r = params.cell_radius_m;
    const double s = sinc(2.0 / alpha);
    const double kap = kappa_of(params);
    const double bt = beta_tilde(lambda, d, alpha);

    auto head = [&](double x) {
        return lambda * M_PI * r * r *
               std::exp(-M_PI * lambda * std::pow(x, 2.0 / alpha) * d * d / s) /
               ((1.0 + kap * std::pow(x, 2.0 / alpha)) * (1.0 + x));
    };
    auto tail = [&](double x) {
        return (s / std::exp(1.0)) * (r / d) * (r / d) * std::pow(x, -2.0 / alpha) /
               ((1.0 + kap * std::pow(x, 2.0 / alpha)) * (1.0 + x));
    };
    const double i1 = checked(integrate(head, 0.0, bt, rel_tol), "d2d_sum_rate");
    const double i2 = checked(integrate_to_inf(tail, bt, rel_tol), "d2d_sum_rate");
    return i1 + i2;
}

} // namespace d2d
