#pragma once

#include "nsbandit/policy.hpp"
#include "nsbandit/types.hpp"

namespace nsbandit::gd {

// Euclidean projection onto the probability simplex (sort-based
// thresholding): x_i = max(y_i - theta, 0) with theta chosen so sum x = 1.
Vector project_simplex(const Vector& y);

// Fixed learning rate for switching environments: eta = sqrt(G / (L + K*G)).
double theorem3_eta(double gamma, double variance_budget, Index arms);

// Restart block for drifting environments: B = cbrt(L*T / V^2) when
// L*T > V^2 and B = 1 otherwise (rounded, clamped to [1, T]; V = 0
// degenerates to B = T as in the bandit module).
Index theorem4_block(double variance_budget, double drift, Index horizon);

struct GdConfig {
  Index arms = 2;
  bool adaptive = false;
  double eta = 1.0;         // fixed mode
  Index block_length = 1;   // adaptive mode: learning-rate reset period
};

// Optimistic projected gradient descent over the simplex. Each step plays
//   x_hat_t = proj(x_t - (eta_t/2) * l_{t-1})
// and updates
//   x_{t+1} = proj(x_t - (eta_t/2) * l_t).
// In adaptive mode eta_t = 1/sqrt(4 * sum ||l_tau - l_{tau-1}||_2^2) over the
// current interval, with an infinite-rate sentinel while the accumulated
// deviation is zero: both steps then jump to the vertex minimizing the loss
// vector (lowest index on ties). Interval restarts reset only the learning
// rate; the iterate x carries over.
class GradientDescentForecaster : public FullInfoPolicy {
 public:
  explicit GradientDescentForecaster(const GdConfig& config);

  Vector play() override;
  void observe(const Vector& loss) override;

  double deviation_accum() const { return dev_accum_; }
  const Vector& iterate() const { return x_; }

 private:
  double current_eta() const;  // NaN encodes the infinite sentinel

  GdConfig config_;
  Vector x_;          // mirror point x_t
  Vector last_loss_;  // l_{t-1}, with l_0 = 0
  double dev_accum_ = 0.0;
  Index step_in_interval_ = 0;
};

FullInfoFactory make_gd_fixed_factory(Index arms, double eta);
FullInfoFactory make_gd_adaptive_factory(Index arms, Index block_length);

}  // namespace nsbandit::gd
