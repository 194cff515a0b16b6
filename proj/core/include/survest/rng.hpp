#pragma once

#include <cstdint>

namespace survest {

// splitmix64 finalizer (Vigna / Steele et al.). Used both as the sampling
// stream and to derive per-replicate child seeds: all outputs are a pure
// function of the seed, so serial and parallel runs agree exactly.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Child seed for replicate r of a run seeded with `seed`.
inline std::uint64_t child_seed(std::uint64_t seed, std::uint64_t r) {
    return mix64(seed ^ mix64(r + 1));
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, bound) by rejection; bound must be > 0.
    std::uint64_t bounded(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace survest
