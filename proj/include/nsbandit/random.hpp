#pragma once

#include <cstdint>
#include <string_view>

namespace nsbandit {

// Deterministic splitmix64 stream. All randomness in the library flows
// through this generator so that runs are bit-reproducible across
// platforms and standard-library versions (std:: distributions are not
// pinned by the standard, so we never use them).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in {0, ..., n-1}, rejection sampled (no modulo bias).
  int next_below(int n);

  // Uniform double in [lo, hi).
  double next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  std::uint64_t state_;
};

// Independent sub-stream derived from (seed, tag) or (seed, tag, index).
// Streams with distinct tags/indices are statistically independent.
Rng derive_rng(std::uint64_t seed, std::string_view tag);
Rng derive_rng(std::uint64_t seed, std::string_view tag, std::uint64_t index);

// Raw 64-bit mix of (seed, tag), handy for seeding policy factories.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag);

}  // namespace nsbandit
