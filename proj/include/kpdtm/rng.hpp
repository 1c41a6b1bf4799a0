#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace kpdtm {

/// SplitMix64: a counter-based 64-bit generator (output = mix of seed + i*gamma).
/// Chosen over std::mt19937 + std::*_distribution because the standard
/// distributions are implementation-defined; this stream is identical on
/// every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller; pairs are drawn eagerly and cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0,1] so log is finite
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Unbiased integer in [0, bound) by rejection on the top bits.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t mask = ~std::uint64_t{0};
        mask >>= __builtin_clzll(bound - 1 | 1);
        for (;;) {
            const std::uint64_t x = next() & mask;
            if (x < bound) return x;
        }
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Decorrelated substream seed for (seed, stream). Restarts, data generation
/// and padding draws each get their own stream so they can run in any order.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed ^ (0xA0761D6478BD642Full + stream * 0xE7037ED1A0B428DBull));
    return g.next();
}

/// First k entries of a seeded partial Fisher-Yates shuffle of 0..n-1.
inline std::vector<std::size_t> pick_distinct(std::size_t n, std::size_t k, SplitMix64& g) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k && i + 1 < n; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(g.below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace kpdtm
