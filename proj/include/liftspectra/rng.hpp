#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace liftspectra {

// SplitMix64 finalizer (Steele/Lea/Flood constants).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kSplitMix64Gamma = 0x9E3779B97F4A7C15ULL;

// Counter-based generator: output i of seed s is splitmix64_mix(s + (i+1)*gamma),
// so any output can be produced without stepping through the ones before it.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kSplitMix64Gamma;
        return splitmix64_mix(state_);
    }

    // Uniform on [0,1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on [-1,1).
    double next_symmetric() { return 2.0 * next_double() - 1.0; }

    // Unbiased uniform on [0,bound) by rejection; bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

// Substream seed for child `index` of `parent_seed`: equals output `index`
// of SplitMix64(parent_seed). Used for per-edge permutation streams and
// per-trial seeds so results do not depend on evaluation order.
inline std::uint64_t derive_stream_seed(std::uint64_t parent_seed, std::uint64_t index) {
    return splitmix64_mix(parent_seed + (index + 1) * kSplitMix64Gamma);
}

// In-place Fisher-Yates, uniform over all permutations.
inline void shuffle(std::span<std::uint32_t> values, SplitMix64& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(values[i - 1], values[j]);
    }
}

inline std::vector<std::uint32_t> random_permutation(std::uint32_t n, SplitMix64& rng) {
    std::vector<std::uint32_t> perm(n);
    for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
    shuffle(perm, rng);
    return perm;
}

} // namespace liftspectra
