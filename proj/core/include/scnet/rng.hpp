#pragma once

// Seeded randomness with named sub-streams.
//
// Every random draw in the library flows from one base seed through
// Rng::substream(tag, index). Distribution sampling is implemented here
// rather than with <random> adaptors because the standard leaves
// distribution algorithms implementation-defined; outputs must be
// reproducible independent of compiler and standard library.

#include <cmath>
#include <cstdint>
#include <string_view>

namespace scnet {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

// xoshiro256** — small state, fast, and fully specified here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_mix_(seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = detail::splitmix64(sm);
    }

    // Child stream derived from (this stream's seed, tag, index).
    // Draw order in one stream never affects another.
    Rng substream(std::string_view tag, std::uint64_t index = 0) const {
        std::uint64_t mix = seed_mix_ ^ detail::fnv1a(tag) ^ (0x9e3779b97f4a7c15ULL * (index + 1));
        return Rng(mix, /*already_mixed=*/true);
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

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). Rejection keeps it unbiased.
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t threshold = (0ULL - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Knuth's product method; exact and fine for the lambdas used here.
    int next_poisson(double lambda) {
        const double limit = std::exp(-lambda);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= next_double();
        } while (p > limit);
        return k - 1;
    }

    // Box-Muller (the cached half is discarded to keep draws stateless).
    double next_normal(double mean = 0.0, double stddev = 1.0) {
        double u1;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(6.283185307179586 * u2);
    }

    // Pareto with tail index alpha and scale x_min, via inversion.
    double next_pareto(double alpha, double x_min) {
        double u;
        do {
            u = next_double();
        } while (u <= 0.0);
        return x_min * std::pow(u, -1.0 / alpha);
    }

private:
    explicit Rng(std::uint64_t mixed, bool) : seed_mix_(mixed) {
        std::uint64_t sm = mixed;
        for (auto& word : state_) word = detail::splitmix64(sm);
    }

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t seed_mix_ = 0;
    std::uint64_t state_[4] = {};
};

}  // namespace scnet
