#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace uds {

// Deterministic, portable random streams.  Results must be bit-identical
// across platforms and compilers, so no std:: distributions are used
// anywhere; everything is built on splitmix64 plus explicit transforms.

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a + 0x9e3779b97f4a7c15ULL * (b + 0x632be59bd9b4e019ULL);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    x ^= x >> 31;
    x = (x ^ (x >> 33)) * 0xff51afd7ed558ccdULL;
    x = (x ^ (x >> 33)) * 0xc4ceb9fe1a85ec53ULL;
    return x ^ (x >> 33);
}

/// One independent random stream.  Streams are derived from a root seed by
/// hashing textual or numeric labels, so the draw order of one stream never
/// disturbs another (hazards per lease, variation per attempt, and so on).
class RngStream {
public:
    RngStream() : state_(0) {}
    explicit RngStream(std::uint64_t state) : state_(state) {}

    static RngStream root(std::uint64_t seed) {
        return RngStream(mix64(seed, fnv1a64("uds.root")));
    }

    RngStream derive(std::string_view label) const {
        return RngStream(mix64(state_, fnv1a64(label)));
    }

    RngStream derive(std::uint64_t a) const { return RngStream(mix64(state_, a)); }

    RngStream derive(std::uint64_t a, std::uint64_t b) const {
        return RngStream(mix64(mix64(state_, a), b));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    /// Box-Muller transform; consumes exactly two uniforms per call.
    double normal(double mean, double stddev) {
        double u1 = next_double();
        double u2 = next_double();
        if (u1 < 1e-300) u1 = 1e-300;
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Normal truncated to [lo, hi] by resampling.
    double truncated_normal(double mean, double stddev, double lo, double hi) {
        for (int i = 0; i < 10000; ++i) {
            double v = normal(mean, stddev);
            if (v >= lo && v <= hi) return v;
        }
        return mean < lo ? lo : (mean > hi ? hi : mean);
    }

private:
    std::uint64_t state_;
};

}  // namespace uds
