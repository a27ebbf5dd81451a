#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace ledp {

// Purpose tag of a substream. Draws for distinct tags are independent even
// when the (a, b) indices coincide.
enum class StreamTag : std::uint64_t {
    PeelOffset = 1,       // per-vertex threshold offsets l~(v)
    PeelNoise = 2,        // per-(vertex, pass) peeling noise
    PeelGeom = 3,         // per-(vertex, phase) geometric removal times
    MatThreshold = 4,     // per-coordinate noisy thresholds T^
    MatQuery = 5,         // per-(coordinate, query) noise
    LevelOffset = 6,      // per-vertex offsets in the level algorithm
    LevelNoise = 7,       // per-(vertex, round) level query noise
    RandomizedResponse = 8,
    ColorThreshold = 9,   // per-(vertex, color) noisy thresholds
    ColorNoise = 10,      // per-(vertex, color, step) threshold-check noise
    Generator = 11,       // graph generators (G(n,p))
};

// One independent substream of a NoiseSource. Draws are counter-based: the
// k-th draw depends only on (seed, stream id, k), never on what other
// streams have consumed.
class Stream {
public:
    Stream(std::uint64_t key, bool zero_noise) : key_(key), zero_noise_(zero_noise) {}

    // Uniform in the open interval (0, 1).
    double u01();

    // Lap(b): density (1/2b) exp(-|x|/b). Returns 0 in zero-noise mode.
    double laplace(double scale);

    // Geom(q) on support {1, 2, ...} with Pr[Geom(q) = 1] = q.
    // Zero-noise mode returns ceil(1/q).
    std::int64_t geometric(double q);

    // Bernoulli(p). Zero-noise mode returns true (the noiseless answer).
    bool bernoulli(double p);

private:
    std::uint64_t next_bits();

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool zero_noise_;
};

// Seedable randomness for all mechanisms. A source is a seed plus a mode;
// all actual draws go through per-(index, index, tag) substreams, so results
// are reproducible under any parallel or reordered execution schedule.
class NoiseSource {
public:
    explicit NoiseSource(std::uint64_t seed) : seed_(seed), zero_noise_(false) {}

    static NoiseSource zero() {
        NoiseSource src(0);
        src.zero_noise_ = true;
        return src;
    }
    static NoiseSource make(std::uint64_t seed, bool zero_noise) {
        return zero_noise ? zero() : NoiseSource(seed);
    }

    Stream stream(std::uint64_t a, std::uint64_t b, StreamTag tag) const;
    Stream stream(std::uint64_t a, std::uint64_t b, std::uint64_t c, StreamTag tag) const;

    bool zero_noise() const { return zero_noise_; }
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    bool zero_noise_;
};

// Pr[Lap(b) <= t]: 1 - exp(-t/b)/2 for t >= 0, exp(t/b)/2 otherwise.
double laplace_le_prob(double threshold, double scale);

// 64-bit mix used for substream derivation and trial-seed splitting.
std::uint64_t mix64(std::uint64_t x);

// Derived seed for trial t of a seeded experiment.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial) {
    return mix64(mix64(seed) ^ (trial + 0x633d5e9a31f0d9b1ULL));
}

}  // namespace ledp
