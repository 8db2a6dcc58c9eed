#include "nsbandit/random.hpp"

#include <stdexcept>

namespace nsbandit {
namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : s) {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    h *= 0x100000001B3ull;
  }
  return h;
}

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xFF51AFD7ED558CCDull;
  x ^= x >> 33;
  x *= 0xC4CEB9FE1A85EC53ull;
  x ^= x >> 33;
  return x;
}

}  // namespace

int Rng::next_below(int n) {
  if (n <= 0) throw std::invalid_argument("Rng::next_below: n must be positive");
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<int>(x % un);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
  return mix(seed ^ mix(fnv1a(tag)));
}

Rng derive_rng(std::uint64_t seed, std::string_view tag) {
  return Rng(derive_seed(seed, tag));
}

Rng derive_rng(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
  return Rng(mix(derive_seed(seed, tag) ^ mix(index + 0x9E3779B97F4A7C15ull)));
}

}  // namespace nsbandit
