#pragma once

#include "nsbandit/types.hpp"

namespace nsbandit::bernstein {

// One-pass count/mean/variance accumulator for losses in [0, 1].
// empirical_variance() is the unbiased sample variance m2/(n-1), which
// equals the pairwise form sum_{i<j} (X_i - X_j)^2 / (n(n-1)).
class RunningStats {
 public:
  void update(double x);  // throws when x is outside [0, 1]
  void reset();

  Index count() const { return n_; }
  double mean() const { return mean_; }
  double empirical_variance() const { return n_ >= 2 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

 private:
  Index n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Empirical-Bernstein confidence radius:
//   rho(n, V, delta) = sqrt(2 V ln(2/delta) / n) + 7 ln(2/delta) / (3 (n-1)).
// Requires n >= 2; the n <= 1 convention (radius 1) belongs to the caller.
double rho(Index n, double v_hat, double delta);

}  // namespace nsbandit::bernstein
