#include "nsbandit/bernstein.hpp"

#include <cmath>
#include <stdexcept>

namespace nsbandit::bernstein {

void RunningStats::update(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument("RunningStats::update: sample outside [0,1]");
  n_ += 1;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void RunningStats::reset() {
  n_ = 0;
  mean_ = 0.0;
  m2_ = 0.0;
}

double rho(Index n, double v_hat, double delta) {
  if (n < 2) throw std::invalid_argument("rho: needs at least two samples");
  if (v_hat < 0.0) throw std::invalid_argument("rho: variance must be nonnegative");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("rho: delta must lie in (0,1)");
  const double log_term = std::log(2.0 / delta);
  return std::sqrt(2.0 * v_hat * log_term / static_cast<double>(n)) +
         7.0 * log_term / (3.0 * static_cast<double>(n - 1));
}

}  // namespace nsbandit::bernstein
