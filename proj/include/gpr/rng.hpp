#pragma once
// rng.hpp - SplitMix64, the generator used by every randomized experiment.
//
// Chosen because it is tiny, well documented, and trivially portable: a port
// in any language that reproduces these two functions reproduces every
// instance this repository generates. State advances by the 64-bit golden
// ratio; output is the Stafford mix13 finalizer.

#include <cstdint>

namespace gpr {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [lo, hi] via rejection sampling.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next()); // full 64-bit span
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return lo + static_cast<std::int64_t>(v % span);
    }

    bool coin(double p = 0.5) {
        return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
    }

private:
    std::uint64_t state_;
};

} // namespace gpr
