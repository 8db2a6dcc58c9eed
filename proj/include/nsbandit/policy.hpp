#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "nsbandit/types.hpp"

namespace nsbandit {

// Bandit interaction: pick an arm, then see only that arm's loss.
class BanditPolicy {
 public:
  virtual ~BanditPolicy() = default;
  virtual Index select_arm() = 0;
  virtual void observe(Index arm, double loss) = 0;
};

// Full-information interaction: play a distribution over arms, then see the
// whole realized loss vector.
class FullInfoPolicy {
 public:
  virtual ~FullInfoPolicy() = default;
  virtual Vector play() = 0;
  virtual void observe(const Vector& loss) = 0;
};

// Factories build a fresh policy instance for one run; `seed` covers any
// internal randomization the policy uses.
using BanditFactory = std::function<std::unique_ptr<BanditPolicy>(std::uint64_t seed)>;
using FullInfoFactory = std::function<std::unique_ptr<FullInfoPolicy>(std::uint64_t seed)>;

}  // namespace nsbandit
