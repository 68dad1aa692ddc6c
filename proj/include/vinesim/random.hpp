#pragma once

#include <cstdint>
#include <random>

namespace vinesim {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based seed for one Monte Carlo trial.
///
/// The seed is a pure function of (master, spot_count, trial_index), so a
/// trial sees the same random stream no matter which thread runs it or in
/// which order trials are scheduled.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t spot_count,
                                   std::uint64_t trial_index) noexcept {
  return mix64(mix64(mix64(master) ^ spot_count) ^ trial_index);
}

/// Thin wrapper over mt19937_64 with portable variate mappings.
///
/// The standard distributions are implementation-defined, so uniform doubles
/// and integers are derived from raw engine output here to keep spot sets
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer on [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    // Lemire's multiply-shift with rejection.
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vinesim
