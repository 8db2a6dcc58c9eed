#include "nsbandit/gdexperts.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace nsbandit::gd {

namespace {

Index argmin_lowest(const Vector& v) {
  Index best = 0;
  for (Index i = 1; i < v.size(); ++i)
    if (v[i] < v[best]) best = i;
  return best;
}

Vector vertex(Index arms, Index i) {
  Vector e = Vector::Zero(arms);
  e[i] = 1.0;
  return e;
}

void check_loss(const Vector& loss, Index arms) {
  if (loss.size() != arms)
    throw std::invalid_argument("loss vector has wrong dimension");
  if ((loss.array() < 0.0).any() || (loss.array() > 1.0).any())
    throw std::invalid_argument("loss vector outside [0,1]^K");
}

}  // namespace

Vector project_simplex(const Vector& y) {
  if (!y.allFinite()) throw std::invalid_argument("project_simplex: non-finite input");
  const Index k = y.size();
  std::vector<double> u(y.data(), y.data() + k);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0, theta = 0.0;
  Index support = 0;
  for (Index j = 0; j < k; ++j) {
    cumsum += u[static_cast<size_t>(j)];
    const double candidate = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[static_cast<size_t>(j)] - candidate > 0.0) {
      theta = candidate;
      support = j + 1;
    }
  }
  (void)support;
  return (y.array() - theta).max(0.0);
}

double theorem3_eta(double gamma, double variance_budget, Index arms) {
  if (gamma < 1.0) throw std::invalid_argument("theorem3_eta: gamma must be >= 1");
  if (variance_budget < 0.0)
    throw std::invalid_argument("theorem3_eta: variance budget must be >= 0");
  return std::sqrt(gamma / (variance_budget + static_cast<double>(arms) * gamma));
}

Index theorem4_block(double variance_budget, double drift, Index horizon) {
  if (drift < 0.0) throw std::invalid_argument("theorem4_block: drift must be >= 0");
  if (variance_budget < 0.0)
    throw std::invalid_argument("theorem4_block: variance budget must be >= 0");
  if (horizon < 1) throw std::invalid_argument("theorem4_block: empty horizon");
  if (drift == 0.0) return horizon;
  const double t = static_cast<double>(horizon);
  if (variance_budget * t <= drift * drift) return 1;
  const double b = std::cbrt(variance_budget * t / (drift * drift));
  return std::clamp<Index>(std::llround(b), 1, horizon);
}

GradientDescentForecaster::GradientDescentForecaster(const GdConfig& config)
    : config_(config),
      x_(Vector::Constant(config.arms, 1.0 / static_cast<double>(config.arms))),
      last_loss_(Vector::Zero(config.arms)) {
  if (config_.arms < 1) throw std::invalid_argument("gd: needs arms");
  if (config_.adaptive) {
    if (config_.block_length < 1)
      throw std::invalid_argument("gd: block length must be >= 1");
  } else if (!(config_.eta > 0.0)) {
    throw std::invalid_argument("gd: fixed eta must be positive");
  }
}

double GradientDescentForecaster::current_eta() const {
  if (!config_.adaptive) return config_.eta;
  if (dev_accum_ == 0.0) return std::nan("");  // infinite-rate sentinel
  return 1.0 / (2.0 * std::sqrt(dev_accum_));
}

Vector GradientDescentForecaster::play() {
  const double eta = current_eta();
  if (std::isnan(eta)) return vertex(config_.arms, argmin_lowest(last_loss_));
  return project_simplex(x_ - (eta / 2.0) * last_loss_);
}

void GradientDescentForecaster::observe(const Vector& loss) {
  check_loss(loss, config_.arms);
  const double eta = current_eta();
  if (std::isnan(eta)) {
    x_ = vertex(config_.arms, argmin_lowest(loss));
  } else {
    x_ = project_simplex(x_ - (eta / 2.0) * loss);
  }
  if (config_.adaptive) {
    dev_accum_ += (loss - last_loss_).squaredNorm();
    step_in_interval_ += 1;
    if (step_in_interval_ >= config_.block_length) {
      dev_accum_ = 0.0;  // learning rate resets; the iterate carries over
      step_in_interval_ = 0;
    }
  }
  last_loss_ = loss;
}

FullInfoFactory make_gd_fixed_factory(Index arms, double eta) {
  GdConfig c;
  c.arms = arms;
  c.adaptive = false;
  c.eta = eta;
  return [c](std::uint64_t) { return std::make_unique<GradientDescentForecaster>(c); };
}

FullInfoFactory make_gd_adaptive_factory(Index arms, Index block_length) {
  GdConfig c;
  c.arms = arms;
  c.adaptive = true;
  c.block_length = block_length;
  return [c](std::uint64_t) { return std::make_unique<GradientDescentForecaster>(c); };
}

}  // namespace nsbandit::gd
