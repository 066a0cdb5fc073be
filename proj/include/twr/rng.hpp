// Seeded, splittable random number generation for channel realizations.
//
// SplitMix64 (Steele, Lea, Flood 2014): a counter-based generator with a
// 64-bit state advanced by the golden-gamma constant. Every draw in a run
// is a pure function of the seed, so identical seeds give byte-identical
// simulation output. Sub-streams are derived by hashing (seed, index),
// which keeps draws for one node independent of how many other nodes the
// topology contains.

#pragma once

#include <cmath>
#include <cstdint>

namespace twr {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on (0, 1]: 53 mantissa bits, never exactly zero.
    double next_uniform() {
        const std::uint64_t bits = next_u64() >> 11;
        return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
    }

    // Exponential with unit mean, the power-gain law of Rayleigh fading.
    double next_exponential() { return -std::log(next_uniform()); }

  private:
    std::uint64_t state_;
};

// Deterministic sub-stream seed for (master seed, index) pairs.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 mix(master ^ (0xD6E8FEB86659FD93ULL * (index + 1)));
    return mix.next_u64();
}

}  // namespace twr
