#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace taskseq {

/// Seeded random source. Every draw is derived from the raw 64-bit engine
/// output so sequences are identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). n must be positive.
    std::size_t uniform_index(std::size_t n);

    /// Uniform real in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Combine two seeds into a new, well-mixed seed.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// FNV-1a, stable across platforms.
std::uint64_t hash_string(std::string_view s);

}  // namespace taskseq
