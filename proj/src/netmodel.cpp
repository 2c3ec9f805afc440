#include "d2d/netmodel.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace d2d {

double NetworkRealization::distance(int rx, int tx) const {
    const Eigen::Vector2d rx_pos = (rx == 0) ? Eigen::Vector2d::Zero() : d2d_rx_pos.at(rx - 1);
    const Eigen::Vector2d tx_pos = (tx == 0) ? cell_user_pos : d2d_tx_pos.at(tx - 1);
    return (rx_pos - tx_pos).norm();
}

NetworkRealization sample_realization(const SystemParams& params, RandomStream& rng) {
    params.validate();
    NetworkRealization real;
    real.cell_user_pos = rng.uniform_disk(params.cell_radius_m);

    const int k = rng.poisson(params.expected_k_drop());
    real.d2d_tx_pos.reserve(k);
    real.d2d_rx_pos.reserve(k);
    for (int i = 0; i < k; ++i) {
        const Eigen::Vector2d tx = rng.uniform_disk(params.drop_radius_m());
        real.d2d_tx_pos.push_back(tx);
        real.d2d_rx_pos.push_back(rng.isotropic_offset(tx, params.d2d_link_dist_m));
    }

    real.fading.resize(k + 1, k + 1);
    for (int r = 0; r <= k; ++r)
        for (int t = 0; t <= k; ++t) real.fading(r, t) = rng.exponential();
    return real;
}

double channel_gain(const NetworkRealization& real, int rx, int tx, double alpha) {
    const double d = real.distance(rx, tx);
    if (d <= 0.0) throw std::domain_error("channel_gain: coincident nodes");
    return real.fading(rx, tx) * std::pow(d, -alpha);
}

Eigen::MatrixXd gain_matrix(const NetworkRealization& real, double alpha) {
    const int n = real.num_d2d() + 1;
    Eigen::MatrixXd g(n, n);
    for (int r = 0; r < n; ++r)
        for (int t = 0; t < n; ++t) g(r, t) = channel_gain(real, r, t, alpha);
    return g;
}

double sinr_cellular(const NetworkRealization& real, const PowerProfile& p, double alpha,
                     double noise_w) {
    const int k = real.num_d2d();
    double interf = 0.0;
    for (int t = 1; t <= k; ++t)
        if (p(t) > 0.0) interf += channel_gain(real, 0, t, alpha) * p(t);
    const double signal = channel_gain(real, 0, 0, alpha) * p(0);
    const double denom = interf + noise_w;
    if (denom == 0.0)
        return signal > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return signal / denom;
}

double sinr_d2d(int k, const NetworkRealization& real, const PowerProfile& p, double alpha,
                double noise_w) {
    const int n = real.num_d2d();
    double interf = channel_gain(real, k, 0, alpha) * p(0);
    for (int t = 1; t <= n; ++t)
        if (t != k && p(t) > 0.0) interf += channel_gain(real, k, t, alpha) * p(t);
    const double signal = channel_gain(real, k, k, alpha) * p(k);
    const double denom = interf + noise_w;
    if (denom == 0.0)
        return signal > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return signal / denom;
}

double dist_cdf_cellular(double r, double cell_radius) {
    if (r < 0.0) return 0.0;
    if (r >= cell_radius) return 1.0;
    return r * r / (cell_radius * cell_radius);
}

double dist_pdf_crosslink(double r, double cell_radius) {
    if (r < 0.0) throw std::domain_error("dist_pdf_crosslink: negative distance");
    const double big_r = cell_radius;
    if (r == 0.0 || r >= 2.0 * big_r) return 0.0;
    const double u = r / (2.0 * big_r);
    return (2.0 * r / (big_r * big_r)) *
           ((2.0 / M_PI) * std::acos(u) - (r / (M_PI * big_r)) * std::sqrt(1.0 - u * u));
}

double crosslink_mean_dist(double cell_radius) { return 128.0 * cell_radius / (45.0 * M_PI); }

void save_realization(std::ostream& os, const NetworkRealization& real) {
    const int k = real.num_d2d();
    os.precision(17);
    os << "nodes " << k << "\n";
    os << "cell " << real.cell_user_pos.x() << " " << real.cell_user_pos.y() << "\n";
    for (int i = 0; i < k; ++i)
        os << "d2d_tx " << real.d2d_tx_pos[i].x() << " " << real.d2d_tx_pos[i].y() << "\n";
    for (int i = 0; i < k; ++i)
        os << "d2d_rx " << real.d2d_rx_pos[i].x() << " " << real.d2d_rx_pos[i].y() << "\n";
    os << "fading\n";
    for (int r = 0; r <= k; ++r) {
        for (int t = 0; t <= k; ++t) os << real.fading(r, t) << (t == k ? "" : " ");
        os << "\n";
    }
}

NetworkRealization load_realization(std::istream& is) {
    auto expect = [&](const std::string& tag) {
        std::string got;
        if (!(is >> got) || got != tag)
            throw std::runtime_error("load_realization: expected '" + tag + "'");
    };
    NetworkRealization real;
    expect("nodes");
    int k = 0;
    if (!(is >> k) || k < 0) throw std::runtime_error("load_realization: bad node count");
    expect("cell");
    is >> real.cell_user_pos.x() >> real.cell_user_pos.y();
    real.d2d_tx_pos.resize(k);
    real.d2d_rx_pos.resize(k);
    for (int i = 0; i < k; ++i) {
        expect("d2d_tx");
        is >> real.d2d_tx_pos[i].x() >> real.d2d_tx_pos[i].y();
    }
    for (int i = 0; i < k; ++i) {
        expect("d2d_rx");
        is >> real.d2d_rx_pos[i].x() >> real.d2d_rx_pos[i].y();
    }
    expect("fading");
    real.fading.resize(k + 1, k + 1);
    for (int r = 0; r <= k; ++r)
        for (int t = 0; t <= k; ++t) is >> real.fading(r, t);
    if (!is) throw std::runtime_error("load_realization: truncated input");
    return real;
}

} // namespace d2d
