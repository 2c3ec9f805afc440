#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace d2d {

// Scenario constants for the single-cell uplink with underlaid D2D links.
// All powers are stored in watts; dB/dBm conversion happens only at the
// CLI boundary.  Defaults follow the reference simulation setup: R = 500 m,
// d_kk = 50 m, alpha = 4, P_max,c = 100 mW, P_max,d = 0.1 mW, noise
// -143.97 dBm over 1 MHz, D2D drop ring of 250 m beyond the cell edge.
struct SystemParams {
    double cell_radius_m = 500.0;
    double d2d_density = 2e-5;       // transmitters per m^2
    double pathloss_exp = 4.0;
    double d2d_link_dist_m = 50.0;
    double p_max_cell_w = 0.1;
    double p_max_d2d_w = 1e-4;
    double p_avg_cell_w = 0.1;
    double noise_w = 4.0086773059558127e-18; // -143.97 dBm
    double drop_margin_m = 250.0;
    double beta_cell = 1.0;  // linear target SINR of the uplink
    double beta_d2d = 1.0;   // linear target SINR of each D2D link

    // mean number of D2D transmitters inside the cell
    double expected_k() const { return d2d_density * M_PI * cell_radius_m * cell_radius_m; }

    double drop_radius_m() const { return cell_radius_m + drop_margin_m; }

    // mean number of D2D transmitters in the whole drop disk
    double expected_k_drop() const {
        const double r = drop_radius_m();
        return d2d_density * M_PI * r * r;
    }

    void validate() const {
        auto fail = [](const std::string& what) {
            throw std::invalid_argument("SystemParams: " + what);
        };
        if (!(cell_radius_m > 0)) fail("cell_radius_m must be > 0");
        if (!(d2d_density >= 0)) fail("d2d_density must be >= 0");
        // alpha <= 2 makes the shot-noise moments diverge
        if (!(pathloss_exp > 2)) fail("pathloss_exp must be > 2");
        if (!(d2d_link_dist_m > 0)) fail("d2d_link_dist_m must be > 0");
        if (!(p_avg_cell_w > 0)) fail("p_avg_cell_w must be > 0");
        if (!(p_avg_cell_w <= p_max_cell_w)) fail("p_avg_cell_w must be <= p_max_cell_w");
        if (!(p_max_d2d_w > 0)) fail("p_max_d2d_w must be > 0");
        if (!(noise_w >= 0)) fail("noise_w must be >= 0");
        if (!(drop_margin_m >= 0)) fail("drop_margin_m must be >= 0");
        if (!(beta_cell >= 0)) fail("beta_cell must be >= 0");
        if (!(beta_d2d >= 0)) fail("beta_d2d must be >= 0");
    }
};

} // namespace d2d
