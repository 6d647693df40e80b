#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

// Seedable, bit-portable randomness built on splitmix64. Every random draw in
// the library flows from one root seed through `split`:
//
//   root seed -> experiment -> cell / distance / batch -> shot batch
//             -> per-shot streams (substream 0: outcome bits,
//                                  substream 1: detection flips)
//
// splitmix64 is fully specified by its constants, so a fixed seed yields the
// same sequence on every platform and compiler.

namespace ahs::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Derives a decorrelated child seed for stream `index` of a parent seed.
inline std::uint64_t split(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ ((index + 1) * kGolden));
}

class Stream {
  public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix64(state_);
    }

    // Uniform double in [0, 1), 53 significant bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller. Consumes exactly two draws; no state is
    // cached, so stream consumption per call is fixed.
    double gaussian() {
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::uint64_t state_;
};

}  // namespace ahs::rng
