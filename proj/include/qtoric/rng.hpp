#pragma once

#include <cmath>
#include <cstdint>

namespace qtoric {

// Deterministic 64-bit generator (splitmix64).  Used everywhere randomness is
// needed so that two runs with the same seed produce the same byte stream,
// independent of platform library implementations.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in (0, 1]: 53 random mantissa bits, never exactly zero
    // (so it is safe under log()).
    double uniform01() {
        const std::uint64_t bits = next() >> 11;  // top 53 bits
        return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; one value per call, spare cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Derives the seed of the i-th independent substream of a master seed.  Each
// sampled point consumes exactly one substream, so inserting or removing a
// draw inside one point's generation never perturbs the others.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 mix(master ^ ((index + 1) * 0x9E3779B97F4A7C15ULL));
    return mix.next();
}

}  // namespace qtoric
