#pragma once

#include <cmath>

namespace d2d {

// dB <-> linear power ratio
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// dBm <-> watts
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double milliwatts_to_watts(double mw) { return mw * 1e-3; }

// Normalized sinc: sin(pi x)/(pi x).  All the PPP interference closed
// forms below assume this convention; sinc(1/2) = 2/pi.
inline double sinc(double x) {
    if (x == 0.0) return 1.0;
    const double px = M_PI * x;
    return std::sin(px) / px;
}

} // namespace d2d
