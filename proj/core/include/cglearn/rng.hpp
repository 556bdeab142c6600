#pragma once

#include <cmath>
#include <cstdint>

namespace cglearn {

/// splitmix64 step; also used to derive independent seeds from (seed, tag...) tuples.
constexpr std::uint64_t seed_mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t seed_mix(std::uint64_t a, std::uint64_t b) {
    return seed_mix(a ^ seed_mix(b));
}

template <typename... Rest>
constexpr std::uint64_t seed_mix(std::uint64_t a, std::uint64_t b, Rest... rest) {
    return seed_mix(seed_mix(a, b), rest...);
}

/// Deterministic random generator (xoshiro256**) with hand-rolled distributions.
///
/// The distributions in <random> are implementation-defined, so the same seed
/// produces different streams on different standard libraries. Everything here
/// is specified bit-for-bit, which the reproducibility contracts rely on.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x = seed_mix(x);
            word = x;
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double prob) { return uniform01() < prob; }

    /// Uniform integer in [lo, hi], inclusive, via rejection (no modulo bias).
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
        const std::uint64_t span = hi - lo + 1;
        if (span == 0) return next_u64();  // full range
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return lo + x % span;
    }

    /// Standard normal via Box-Muller; caches the second deviate.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Uniform magnitude in [mag_lo, mag_hi] with a random sign.
    double signed_uniform(double mag_lo, double mag_hi) {
        const double magnitude = uniform(mag_lo, mag_hi);
        return bernoulli(0.5) ? magnitude : -magnitude;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4]{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace cglearn
