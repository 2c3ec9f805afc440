#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace d2d {

// SplitMix64 finalizer, used to decorrelate (seed, stream) pairs before
// feeding them to the engine.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Random stream with hand-rolled transforms so that results depend only on
// the mt19937_64 bit stream (which the standard pins down), not on
// library-specific distribution implementations.  One root seed; per-drop
// sub-streams are derived from (seed, stream_index) so drops can be
// evaluated concurrently in any order and still reproduce bit-for-bit.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}
    RandomStream(std::uint64_t seed, std::uint64_t stream)
        : engine_(splitmix64(splitmix64(seed) ^ (stream + 0x632be59bd9b4e019ULL))) {}

    // uniform on [0, 1)
    double uniform() {
        // 53-bit mantissa from the top bits
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // uniform on (0, 1] -- safe as a log() argument
    double uniform_pos() { return 1.0 - uniform(); }

    // unit-mean exponential
    double exponential() { return -std::log(uniform_pos()); }

    // Poisson by exponential inter-arrival counting; fine for the means
    // used here (hundreds at most).
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        int count = 0;
        double acc = exponential();
        while (acc < mean) {
            ++count;
            acc += exponential();
        }
        return count;
    }

    // uniform point in the disk of given radius centered at the origin
    Eigen::Vector2d uniform_disk(double radius) {
        const double r = radius * std::sqrt(uniform());
        const double phi = 2.0 * M_PI * uniform();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    // point at fixed distance in a uniform direction from `center`
    Eigen::Vector2d isotropic_offset(const Eigen::Vector2d& center, double distance) {
        const double phi = 2.0 * M_PI * uniform();
        return center + distance * Eigen::Vector2d{std::cos(phi), std::sin(phi)};
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace d2d
