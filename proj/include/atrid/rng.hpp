#pragma once

#include <cmath>
#include <cstdint>

namespace atrid {

/// Deterministic PRNG (xoshiro256** seeded through splitmix64).
///
/// Every randomized entry point of the library routes through this
/// generator so that a seed pins down results bit-exactly across
/// platforms; std::uniform_real_distribution is avoided on purpose
/// because its output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept {
        std::uint64_t x = seed;
        for (auto& w : s_) w = splitmix64(x);
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_unit() noexcept {
        return std::ldexp(static_cast<double>(next_u64() >> 11), -53);
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * next_unit(); }

    /// Uniform in [-1, 1).
    double symmetric() noexcept { return uniform(-1.0, 1.0); }

    /// Fair +-1.
    double sign() noexcept { return (next_u64() & 1u) ? 1.0 : -1.0; }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) noexcept {
        x += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t v, int k) noexcept {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t s_[4];
};

}  // namespace atrid
