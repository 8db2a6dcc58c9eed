#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nsbandit/random.hpp"
#include "nsbandit/types.hpp"

namespace nsbandit::env {

enum class DistKind { kPointMass, kTwoPoint };

// Per-step, per-arm loss distribution. Either a point mass or a two-point
// ("Bernoulli-type") distribution on {low, high} with P[high] = p_high.
// All support values live in [0, 1].
struct ArmDistribution {
  DistKind kind = DistKind::kPointMass;
  double value = 0.0;                         // point-mass location
  double low = 0.0, high = 0.0, p_high = 0.0; // two-point support and weight

  static ArmDistribution point_mass(double value);
  static ArmDistribution two_point(double low, double high, double p_high);

  double mean() const;
  double variance() const;

  // Consumes exactly one draw from `rng` regardless of kind, so the number
  // of draws per step is fixed and realizations depend only on (seed, t, i).
  double sample(Rng& rng) const;

  bool operator==(const ArmDistribution&) const = default;
};

// (Gamma, V, Lambda): switch count, total drift, total statistical variance.
struct NonStationarityParams {
  double gamma = 1.0;            // 1 + number of mean-vector changes
  double drift = 0.0;            // sum of sup-norm mean deltas, mu_0 = 0
  double variance_budget = 0.0;  // sum over steps and arms of variances
};

// A horizon x arms grid of loss distributions. Steps are 1-based (t in
// [1, T]) to match the algorithms' conventions; arms are 0-based.
class DistributionSequence {
 public:
  DistributionSequence(Index horizon, Index arms);

  Index horizon() const { return horizon_; }
  Index arms() const { return arms_; }

  const ArmDistribution& at(Index t, Index i) const;
  ArmDistribution& at(Index t, Index i);
  void set_row(Index t, const ArmDistribution& dist);  // same dist for all arms

  Vector mean_vector(Index t) const;
  Vector variance_vector(Index t) const;

 private:
  Index horizon_, arms_;
  std::vector<ArmDistribution> grid_;  // row-major, (t-1)*arms + i
};

NonStationarityParams compute_params(const DistributionSequence& seq);

// Draws the full loss vector for step t; coordinate i is independent and
// deterministic given (seed, t, i).
Vector sample_losses(const DistributionSequence& seq, Index t, Rng& rng);

// The (P, Q) pair on {0, 2*sigma}: Q has mean sigma and variance sigma^2,
// P has mean sigma - epsilon and variance (sigma - epsilon)(sigma + epsilon).
// Requires 0 < sigma <= 1/2 and 0 < epsilon <= sigma/sqrt(2).
std::pair<ArmDistribution, ArmDistribution> lemma1_pair(double sigma, double epsilon);

// KL divergence in bits between two-point distributions on the same support;
// multiply by ln 2 for nats. Returns +infinity when absolute continuity fails.
double kl_two_point(const ArmDistribution& q, const ArmDistribution& p);

// T steps split into `gamma` contiguous stationary intervals (sizes differ by
// at most one, earliest intervals take the remainder). Every interval has a
// uniformly chosen best arm whose mean sits `gap` below the others; adjacent
// intervals are forced to differ so the measured switch count equals gamma.
// All arms are point masses.
DistributionSequence gen_switching(Index arms, Index horizon, Index gamma,
                                   double gap, Rng& rng);

// Means follow a reflected random walk inside the feasible box, with the
// per-step sup-norm step size scaled so the measured total drift lands in
// [0.9*V, V]. Each arm is a symmetric two-point distribution with variance
// `variance_per_step` about its mean (point masses when it is zero).
DistributionSequence gen_drifting(Index arms, Index horizon, double drift_budget,
                                  double variance_per_step, Rng& rng);

std::string to_json(const DistributionSequence& seq);
DistributionSequence sequence_from_json(const std::string& text);

// Splits `total` into `parts` contiguous sizes differing by at most one,
// earliest parts take the remainder.
std::vector<Index> partition_even(Index total, Index parts);

}  // namespace nsbandit::env
