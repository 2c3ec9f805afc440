#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "d2d/params.hpp"
#include "d2d/rng.hpp"

namespace d2d {

// Transmit power vector, index 0 = cellular user, 1..K = D2D transmitters.
using PowerProfile = Eigen::VectorXd;

// One sampled geometry and fading draw.
//
// Index convention everywhere: receiver/transmitter index 0 is the
// cellular side (receiver 0 = BS at the origin, transmitter 0 = uplink
// user), indices 1..K are the D2D pairs.  fading(r, t) is the power gain
// |h_{r,t}|^2 between receiver r and transmitter t.
struct NetworkRealization {
    Eigen::Vector2d cell_user_pos = Eigen::Vector2d::Zero();
    std::vector<Eigen::Vector2d> d2d_tx_pos;
    std::vector<Eigen::Vector2d> d2d_rx_pos;
    Eigen::MatrixXd fading; // (K+1) x (K+1)

    int num_d2d() const { return static_cast<int>(d2d_tx_pos.size()); }

    // distance from transmitter `tx` to receiver `rx` (index 0 = cellular)
    double distance(int rx, int tx) const;
};

// Draw one realization: uplink user uniform in the cell, D2D transmitters
// as a PPP on the enlarged drop disk, each receiver at the fixed pair
// distance in a uniform direction, all fading gains unit-mean exponential.
NetworkRealization sample_realization(const SystemParams& params, RandomStream& rng);

// |h|^2 d^-alpha between receiver rx and transmitter tx.  Throws
// std::domain_error for coincident nodes (possible only in file-loaded
// realizations).
double channel_gain(const NetworkRealization& real, int rx, int tx, double alpha);

// Full gain matrix, receiver-major, same indexing as fading.
Eigen::MatrixXd gain_matrix(const NetworkRealization& real, double alpha);

// SINR of the uplink at the BS, Infinity when noise and interference both
// vanish with positive signal power.
double sinr_cellular(const NetworkRealization& real, const PowerProfile& p, double alpha,
                     double noise_w);

// SINR of D2D link k at its receiver.
double sinr_d2d(int k, const NetworkRealization& real, const PowerProfile& p, double alpha,
                double noise_w);

// cdf of the uplink-user distance to the BS (uniform in the disk of radius R)
double dist_cdf_cellular(double r, double cell_radius);

// pdf of the distance between two independent uniform points in the disk of
// radius R (support [0, 2R]); throws std::domain_error for r < 0
double dist_pdf_crosslink(double r, double cell_radius);

// mean of dist_pdf_crosslink: 128 R / (45 pi)
double crosslink_mean_dist(double cell_radius);

// Plain-text serialization for regression fixtures: one node per line
// (role, x, y) followed by the fading matrix as a dense block.
void save_realization(std::ostream& os, const NetworkRealization& real);
NetworkRealization load_realization(std::istream& is);

} // namespace d2d
