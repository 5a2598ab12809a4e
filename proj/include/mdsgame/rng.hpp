#pragma once

#include <cmath>
#include <cstdint>

// Seedable, splittable counter-based generator: SplitMix64 streams keyed by
// (seed, stream). Every consumer gets its own stream (one per node, one per
// Monte Carlo cell), so draw order across consumers never matters and results
// are bit-portable across platforms. Deliberately no <random> distributions:
// their outputs are implementation-defined, which would break the
// byte-identical-output contract.
namespace mdsgame::rng {

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix64(seed) ^ mix64(stream ^ kGamma)) {}

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi] via 128-bit multiply-high (bias < 2^-57 for
  // the spans used here; exactness is not required, portability is).
  std::uint64_t next_int(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    const auto wide = static_cast<unsigned __int128>(next_u64()) * span;
    return lo + static_cast<std::uint64_t>(wide >> 64);
  }

  bool bernoulli(double p) { return next_double() < p; }

  // Knuth product method; fine for the small per-slot means used here.
  int next_poisson(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    int count = 0;
    double product = next_double();
    while (product > limit) {
      ++count;
      product *= next_double();
    }
    return count;
  }

 private:
  std::uint64_t state_;
};

}  // namespace mdsgame::rng
