#include "nsbandit/banditalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nsbandit::bandit {

Index block_length(Index arms, Index horizon, double drift, double variance_budget) {
  if (drift < 0.0) throw std::invalid_argument("block_length: drift must be >= 0");
  if (variance_budget < 0.0)
    throw std::invalid_argument("block_length: variance budget must be >= 0");
  if (horizon < 1) throw std::invalid_argument("block_length: empty horizon");
  if (drift == 0.0) return horizon;  // no drift, restarts are pointless

  const double k = static_cast<double>(arms);
  const double t = static_cast<double>(horizon);
  const double b = k * variance_budget * variance_budget >= t * drift
                       ? std::cbrt(k * k * variance_budget * t / (drift * drift))
                       : std::sqrt(k * t / drift);
  return std::clamp<Index>(std::llround(b), 1, horizon);
}

RerunUcbVConfig RerunUcbVConfig::with_params(Index arms, Index horizon, double drift,
                                             double variance_budget) {
  RerunUcbVConfig c;
  c.arms = arms;
  c.horizon = horizon;
  c.block_length = bandit::block_length(arms, horizon, drift, variance_budget);
  c.delta = 1.0 / (static_cast<double>(arms) * static_cast<double>(horizon));
  return c;
}

double optimistic_index(const bernstein::RunningStats& stats, double delta) {
  const Index n = stats.count();
  if (n == 0) return -1.0;                 // mu_hat = 0, lambda = 1
  if (n == 1) return stats.mean() - 1.0;   // lambda = 1
  return stats.mean() - bernstein::rho(n, stats.empirical_variance(), delta);
}

RerunUcbV::RerunUcbV(const RerunUcbVConfig& config)
    : config_(config), stats_(static_cast<size_t>(config.arms)) {
  if (config_.arms < 1) throw std::invalid_argument("RerunUcbV: needs arms");
  if (config_.block_length < 1 || config_.block_length > config_.horizon)
    throw std::invalid_argument("RerunUcbV: block length outside [1, T]");
  if (config_.delta == 0.0)
    config_.delta = 1.0 / (static_cast<double>(config_.arms) *
                           static_cast<double>(config_.horizon));
  if (!(config_.delta > 0.0 && config_.delta < 1.0))
    throw std::invalid_argument("RerunUcbV: delta outside (0,1)");
}

Index RerunUcbV::select_arm() {
  Index best = 0;
  double best_index = optimistic_index(stats_[0], config_.delta);
  for (Index i = 1; i < config_.arms; ++i) {
    const double idx = optimistic_index(stats_[static_cast<size_t>(i)], config_.delta);
    if (idx < best_index) {
      best_index = idx;
      best = i;
    }
  }
  return best;
}

void RerunUcbV::observe(Index arm, double loss) {
  if (arm < 0 || arm >= config_.arms)
    throw std::out_of_range("RerunUcbV::observe: bad arm");
  stats_[static_cast<size_t>(arm)].update(loss);
  step_in_block_ += 1;
  if (step_in_block_ >= config_.block_length) {
    for (auto& s : stats_) s.reset();
    step_in_block_ = 0;
  }
}

const bernstein::RunningStats& RerunUcbV::arm_stats(Index arm) const {
  return stats_.at(static_cast<size_t>(arm));
}

UniformRandomPolicy::UniformRandomPolicy(Index arms, std::uint64_t seed)
    : arms_(arms), rng_(seed) {
  if (arms < 1) throw std::invalid_argument("UniformRandomPolicy: needs arms");
}

Index UniformRandomPolicy::select_arm() {
  return rng_.next_below(static_cast<int>(arms_));
}

void UniformRandomPolicy::observe(Index /*arm*/, double loss) {
  if (!(loss >= 0.0 && loss <= 1.0))
    throw std::invalid_argument("UniformRandomPolicy::observe: loss outside [0,1]");
}

FixedArmPolicy::FixedArmPolicy(Index arms, Index arm) : arm_(arm) {
  if (arm < 0 || arm >= arms) throw std::invalid_argument("FixedArmPolicy: bad arm");
}

void FixedArmPolicy::observe(Index /*arm*/, double loss) {
  if (!(loss >= 0.0 && loss <= 1.0))
    throw std::invalid_argument("FixedArmPolicy::observe: loss outside [0,1]");
}

BanditFactory make_rerun_ucbv_factory(const RerunUcbVConfig& config) {
  return [config](std::uint64_t) { return std::make_unique<RerunUcbV>(config); };
}

BanditFactory make_uniform_random_factory(Index arms) {
  return [arms](std::uint64_t seed) {
    return std::make_unique<UniformRandomPolicy>(arms, seed);
  };
}

BanditFactory make_fixed_arm_factory(Index arms, Index arm) {
  return [arms, arm](std::uint64_t) {
    return std::make_unique<FixedArmPolicy>(arms, arm);
  };
}

}  // namespace nsbandit::bandit
