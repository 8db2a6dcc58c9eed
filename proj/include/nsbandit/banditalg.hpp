#pragma once

#include <vector>

#include "nsbandit/bernstein.hpp"
#include "nsbandit/policy.hpp"
#include "nsbandit/random.hpp"
#include "nsbandit/types.hpp"

namespace nsbandit::bandit {

// Restart block length:
//   B = cbrt(K^2 Lambda T / V^2)  when K Lambda^2 >= T V,
//   B = sqrt(K T / V)             otherwise,
// rounded to the nearest integer and clamped to [1, T]. A zero drift
// estimate degenerates to a single block (B = T); negative drift throws.
Index block_length(Index arms, Index horizon, double drift, double variance_budget);

struct RerunUcbVConfig {
  Index arms = 2;
  Index horizon = 1;
  Index block_length = 1;  // steps between restarts
  double delta = 0.0;      // 0 picks the default 1/(K*T)

  static RerunUcbVConfig with_params(Index arms, Index horizon, double drift,
                                     double variance_budget);
};

// Lower-confidence-bound index mu_hat - lambda with the small-sample
// conventions: mu_hat = 0 when unplayed; lambda = 1 when fewer than two
// samples; otherwise lambda = rho(n, v_hat, delta).
double optimistic_index(const bernstein::RunningStats& stats, double delta);

// Variance-aware optimistic bandit with blockwise restarts: per-arm
// statistics feed lower confidence bounds, and every `block_length` steps
// all statistics are discarded and the run starts afresh.
class RerunUcbV : public BanditPolicy {
 public:
  explicit RerunUcbV(const RerunUcbVConfig& config);

  Index select_arm() override;
  void observe(Index arm, double loss) override;

  const bernstein::RunningStats& arm_stats(Index arm) const;
  Index step_in_block() const { return step_in_block_; }

 private:
  RerunUcbVConfig config_;
  std::vector<bernstein::RunningStats> stats_;
  Index step_in_block_ = 0;
};

class UniformRandomPolicy : public BanditPolicy {
 public:
  UniformRandomPolicy(Index arms, std::uint64_t seed);
  Index select_arm() override;
  void observe(Index arm, double loss) override;

 private:
  Index arms_;
  Rng rng_;
};

class FixedArmPolicy : public BanditPolicy {
 public:
  FixedArmPolicy(Index arms, Index arm);
  Index select_arm() override { return arm_; }
  void observe(Index arm, double loss) override;

 private:
  Index arm_;
};

BanditFactory make_rerun_ucbv_factory(const RerunUcbVConfig& config);
BanditFactory make_uniform_random_factory(Index arms);
BanditFactory make_fixed_arm_factory(Index arms, Index arm);

}  // namespace nsbandit::bandit
