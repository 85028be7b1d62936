#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace trustcf {

/// splitmix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic substream wrapper around mt19937_64.
///
/// Each (root seed, replicate, stream) triple derives its own engine seed, so
/// streams are independent and the set of draws a stream produces does not
/// depend on the order in which streams are consumed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Substream for a (replicate, stream) pair under a root seed.
    static Rng substream(std::uint64_t root, std::uint64_t replicate, std::uint64_t stream) {
        std::uint64_t key = mix64(root ^ mix64(replicate ^ mix64(stream)));
        return Rng(key);
    }

    /// Uniform draw in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; one value per call so the draw
    /// sequence is identical across compilers (std::normal_distribution is
    /// implementation-defined).
    double normal01() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        double u2 = uniform01();
        constexpr double two_pi = 6.283185307179586476925287;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    std::uint64_t next_u64() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace trustcf
