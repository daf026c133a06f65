#pragma once

#include <cstdint>
#include <random>

namespace macc::sim {

/// Deterministic random source: a seeded mt19937_64 plus fixed output
/// conversions.
///
/// The standard library specifies the mt19937_64 sequence exactly, but its
/// distribution adaptors are implementation-defined, so all conversions to
/// doubles and bounded integers are done here with fixed arithmetic.
/// Identical seeds therefore give identical draws on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) built from the top 53 bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Uniform integer in [0, n). Fixed-point multiply; the modulo bias is
    /// below 2^-53 for the small n used here.
    std::uint64_t uniform_int(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform01() * static_cast<double>(n)) % n;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 step; used to derive independent sub-stream seeds from one
/// master seed.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace macc::sim
