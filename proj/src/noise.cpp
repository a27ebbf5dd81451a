#include "ledp/noise.hpp"

#include <limits>

namespace ledp {

namespace {
constexpr double kInv2Pow53 = 1.0 / 9007199254740992.0;  // 2^-53
}

std::uint64_t mix64(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Stream NoiseSource::stream(std::uint64_t a, std::uint64_t b, StreamTag tag) const {
    std::uint64_t key = mix64(seed_);
    key = mix64(key ^ a);
    key = mix64(key ^ b);
    key = mix64(key ^ static_cast<std::uint64_t>(tag));
    return Stream(key, zero_noise_);
}

Stream NoiseSource::stream(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                           StreamTag tag) const {
    std::uint64_t key = mix64(seed_);
    key = mix64(key ^ a);
    key = mix64(key ^ b);
    key = mix64(key ^ c);
    key = mix64(key ^ static_cast<std::uint64_t>(tag));
    return Stream(key, zero_noise_);
}

std::uint64_t Stream::next_bits() {
    return mix64(key_ ^ mix64(counter_++ + 0xd1b54a32d192ed03ULL));
}

double Stream::u01() {
    // Center of a 2^-53 cell: never exactly 0 or 1.
    return (static_cast<double>(next_bits() >> 11) + 0.5) * kInv2Pow53;
}

double Stream::laplace(double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("laplace: scale must be positive");
    if (zero_noise_) return 0.0;
    // Inverse CDF. The same uniform yields the same unit draw at every scale,
    // so transcripts depend on scale only through the product.
    const double u = u01() - 0.5;
    const double unit = (u < 0.0 ? 1.0 : -1.0) * std::log(1.0 - 2.0 * std::fabs(u));
    return scale * unit;
}

std::int64_t Stream::geometric(double q) {
    if (!(q > 0.0) || q > 1.0) throw std::invalid_argument("geometric: q must be in (0, 1]");
    if (zero_noise_) {
        // Smallest integer k with k*q >= 1; the guard absorbs cases like
        // 1/0.1 rounding up to 10.000000000000002.
        const double k = std::ceil(1.0 / q - 1e-9);
        return k < 1.0 ? 1 : static_cast<std::int64_t>(k);
    }
    if (q == 1.0) return 1;
    const double u = u01();
    const double g = std::ceil(std::log(u) / std::log1p(-q));
    if (g >= 9.0e18) return std::numeric_limits<std::int64_t>::max();
    return g < 1.0 ? 1 : static_cast<std::int64_t>(g);
}

bool Stream::bernoulli(double p) {
    if (zero_noise_) return true;
    return u01() < p;
}

double laplace_le_prob(double threshold, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("laplace_le_prob: scale must be positive");
    if (threshold >= 0.0) return 1.0 - 0.5 * std::exp(-threshold / scale);
    return 0.5 * std::exp(threshold / scale);
}

}  // namespace ledp
