#pragma once

#include <cstdint>

namespace qfab {

/// Counter-based deterministic random stream (SplitMix64 over an explicit
/// counter). Replays bit-identically for a given seed on any platform with
/// IEEE-754 doubles; streams for unrelated purposes should derive distinct
/// seeds rather than share one generator.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * ++counter_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 bits of mantissa.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; draws are not cached between calls.
    double gaussian();

    std::uint64_t seed() const { return seed_; }

    /// Derive an independent stream (e.g. per run index).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        Rng r(seed ^ 0x51c64b3aa9d302a1ULL);
        r.counter_ = 0x100000000ULL + stream;
        return r.next_u64();
    }

  private:
    std::uint64_t seed_ = 0;
    std::uint64_t counter_ = 0;
};

} // namespace qfab
