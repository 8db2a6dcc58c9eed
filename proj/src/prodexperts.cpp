#include "nsbandit/prodexperts.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace nsbandit::prod {

namespace {

void check_loss(const Vector& loss, Index arms) {
  if (loss.size() != arms)
    throw std::invalid_argument("loss vector has wrong dimension");
  if ((loss.array() < 0.0).any() || (loss.array() > 1.0).any())
    throw std::invalid_argument("loss vector outside [0,1]^K");
}

int bisect_iterations(Index horizon) {
  return 2 + static_cast<int>(std::ceil(std::log2(static_cast<double>(horizon) + 1.0)));
}

// Bisection for a fixed point of f on [0,1]. f is continuous with values in
// [0,1], so g(a) = f(a) - a has g(0) >= 0 >= g(1); returns the evaluated
// point with the smallest |g|.
double bisect_fixed_point(const std::function<double(double)>& f, int iters) {
  double lo = 0.0, hi = 1.0;
  const double g_lo = f(lo) - lo;
  if (g_lo <= 0.0) return lo;
  double best = lo, best_abs = g_lo;
  const double g_hi = f(hi) - hi;
  if (std::abs(g_hi) < best_abs) {
    best = hi;
    best_abs = std::abs(g_hi);
  }
  for (int i = 0; i < iters && best_abs > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double g = f(mid) - mid;
    if (std::abs(g) < best_abs) {
      best = mid;
      best_abs = std::abs(g);
    }
    if (g > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return best;
}

double capped_eta(double ln_experts, double c) {
  return std::min(0.25, std::sqrt(ln_experts / (1.0 + c)));
}

}  // namespace

ProdForecaster::ProdForecaster(Index arms, Index horizon)
    : arms_(arms),
      horizon_(horizon),
      tol_(1.0 / static_cast<double>(horizon)),
      bisect_iters_(bisect_iterations(horizon)),
      ln_experts_(std::log(static_cast<double>(arms))),
      log_w_(Vector::Constant(arms, -std::log(static_cast<double>(arms)))),
      eta_(Vector::Constant(arms, capped_eta(std::log(static_cast<double>(arms)), 0.0))),
      c_(Vector::Zero(arms)),
      last_loss_(Vector::Zero(arms)),
      p_(Vector::Zero(arms)),
      m_(Vector::Zero(arms)) {
  if (arms < 1) throw std::invalid_argument("ProdForecaster: needs arms");
  if (horizon < 1) throw std::invalid_argument("ProdForecaster: needs a horizon");
}

ProdForecaster ProdForecaster::with_state(Index horizon, const Vector& log_w,
                                          const Vector& eta, const Vector& c,
                                          const Vector& last_loss) {
  ProdForecaster f(log_w.size(), horizon);
  f.log_w_ = log_w;
  f.eta_ = eta;
  f.c_ = c;
  f.last_loss_ = last_loss;
  return f;
}

double ProdForecaster::fixed_point_alpha(const Vector& prev_loss) const {
  if (arms_ == 1) return prev_loss[0];
  auto f = [&](double alpha) {
    const Vector arg = log_w_.array() + eta_.array() * (alpha - prev_loss.array());
    const double shift = arg.maxCoeff();
    const Vector mass = eta_.array() * (arg.array() - shift).exp();
    return mass.dot(prev_loss) / mass.sum();
  };
  return bisect_fixed_point(f, bisect_iters_);
}

Vector ProdForecaster::play() {
  if (arms_ == 1) {
    p_ = Vector::Ones(1);
    m_ = Vector::Zero(1);
    return p_;
  }
  const double alpha = fixed_point_alpha(last_loss_);
  m_ = (alpha - last_loss_.array()).matrix();
  const Vector arg = log_w_.array() + eta_.array() * m_.array();
  const double shift = arg.maxCoeff();
  const Vector mass = eta_.array() * (arg.array() - shift).exp();
  p_ = mass / mass.sum();
  diag_.max_fixed_point_residual =
      std::max(diag_.max_fixed_point_residual, std::abs(p_.dot(last_loss_) - alpha));
  return p_;
}

void ProdForecaster::observe(const Vector& loss) {
  check_loss(loss, arms_);
  const double played_loss = p_.dot(loss);
  const Vector r = (played_loss - loss.array()).matrix();
  const Vector d = r - m_;

  diag_.max_weighted_regret = std::max(diag_.max_weighted_regret, std::abs(p_.dot(r)));
  const double dev = (loss - last_loss_).lpNorm<Eigen::Infinity>();
  diag_.max_estimate_excess =
      std::max(diag_.max_estimate_excess, d.cwiseAbs().maxCoeff() - 2.0 * dev);

  if (arms_ > 1) {
    c_ += d.cwiseProduct(d);
    for (Index k = 0; k < arms_; ++k) {
      const double eta_next = capped_eta(ln_experts_, c_[k]);
      if (!(eta_next > 0.0 && eta_next <= 0.25)) diag_.eta_within_bounds = false;
      if (eta_next > eta_[k] + 1e-15) diag_.eta_monotone = false;
      log_w_[k] = (eta_next / eta_[k]) *
                  (log_w_[k] + eta_[k] * r[k] - eta_[k] * eta_[k] * d[k] * d[k]);
      eta_[k] = eta_next;
    }
  }
  last_loss_ = loss;
}

SleepingProdForecaster::SleepingProdForecaster(Index arms, Index horizon)
    : arms_(arms),
      horizon_(horizon),
      tol_(1.0 / static_cast<double>(horizon)),
      bisect_iters_(bisect_iterations(horizon)),
      ln_pool_(std::log(static_cast<double>(arms) * static_cast<double>(horizon))),
      init_log_w_(-ln_pool_),
      init_eta_(capped_eta(ln_pool_, 0.0)),
      last_loss_(Vector::Zero(arms)),
      p_(Vector::Zero(arms)),
      m_(Vector::Zero(arms)),
      awake_mass_(Vector::Zero(arms)) {
  if (arms < 1) throw std::invalid_argument("SleepingProdForecaster: needs arms");
  if (horizon < 2)
    throw std::invalid_argument("SleepingProdForecaster: needs a horizon >= 2");
  experts_.reserve(static_cast<size_t>(arms) * 8);
}

const SleepingProdForecaster::ExpertState& SleepingProdForecaster::expert(
    Index wake_step, Index arm) const {
  const Index idx = (wake_step - 1) * arms_ + arm;
  if (wake_step < 1 || arm < 0 || arm >= arms_ ||
      idx >= static_cast<Index>(experts_.size()))
    throw std::out_of_range("SleepingProdForecaster::expert");
  return experts_[static_cast<size_t>(idx)];
}

double SleepingProdForecaster::fixed_point_alpha() const {
  auto f = [&](double alpha) {
    Vector mass = Vector::Zero(arms_);
    for (size_t e = 0; e < experts_.size(); ++e) {
      const Index k = static_cast<Index>(e) % arms_;
      const ExpertState& s = experts_[e];
      mass[k] += s.eta * std::exp(s.log_w + s.eta * (alpha - last_loss_[k]));
    }
    return mass.dot(last_loss_) / mass.sum();
  };
  return bisect_fixed_point(f, bisect_iters_);
}

Vector SleepingProdForecaster::play() {
  if (t_ >= horizon_)
    throw std::logic_error("SleepingProdForecaster: horizon exhausted");
  // Experts (t+1, k) wake now; their state is the canonical initial one,
  // unchanged by every update while they were asleep.
  for (Index k = 0; k < arms_; ++k)
    experts_.push_back(ExpertState{init_log_w_, init_eta_, 0.0});

  alpha_ = fixed_point_alpha();
  m_ = (alpha_ - last_loss_.array()).matrix();

  awake_mass_.setZero();
  for (size_t e = 0; e < experts_.size(); ++e) {
    const Index k = static_cast<Index>(e) % arms_;
    const ExpertState& s = experts_[e];
    awake_mass_[k] += s.eta * std::exp(s.log_w + s.eta * m_[k]);
  }
  p_ = awake_mass_ / awake_mass_.sum();
  diag_.max_fixed_point_residual =
      std::max(diag_.max_fixed_point_residual, std::abs(p_.dot(last_loss_) - alpha_));
  return p_;
}

void SleepingProdForecaster::observe(const Vector& loss) {
  check_loss(loss, arms_);
  const Index t_now = t_ + 1;
  const double played_loss = p_.dot(loss);
  const Vector r = (played_loss - loss.array()).matrix();
  const Vector d = r - m_;

  diag_.max_weighted_regret = std::max(diag_.max_weighted_regret, std::abs(p_.dot(r)));
  const double dev = (loss - last_loss_).lpNorm<Eigen::Infinity>();
  diag_.max_estimate_excess =
      std::max(diag_.max_estimate_excess, d.cwiseAbs().maxCoeff() - 2.0 * dev);

  // Expected-loss identity over the full pool: awake experts carry their own
  // arm's loss, asleep experts carry the algorithm's loss <p_t, l_t>.
  const double asleep_count =
      static_cast<double>(arms_) * static_cast<double>(horizon_ - t_now);
  const double asleep_mass = asleep_count * init_eta_ * std::exp(init_log_w_);
  const double denom = awake_mass_.sum() + asleep_mass;
  const double pool_loss =
      (awake_mass_.dot(loss) + asleep_mass * played_loss) / denom;
  max_identity_gap_ = std::max(max_identity_gap_, std::abs(pool_loss - played_loss));

  for (size_t e = 0; e < experts_.size(); ++e) {
    const Index k = static_cast<Index>(e) % arms_;
    ExpertState& s = experts_[e];
    s.c += d[k] * d[k];
    const double eta_next = capped_eta(ln_pool_, s.c);
    if (!(eta_next > 0.0 && eta_next <= 0.25)) diag_.eta_within_bounds = false;
    if (eta_next > s.eta + 1e-15) diag_.eta_monotone = false;
    s.log_w = (eta_next / s.eta) *
              (s.log_w + s.eta * r[k] - s.eta * s.eta * d[k] * d[k]);
    s.eta = eta_next;
  }

  t_ = t_now;
  last_loss_ = loss;
}

FullInfoFactory make_prod_factory(Index arms, Index horizon) {
  return [arms, horizon](std::uint64_t) {
    return std::make_unique<ProdForecaster>(arms, horizon);
  };
}

FullInfoFactory make_prod_sleeping_factory(Index arms, Index horizon) {
  return [arms, horizon](std::uint64_t) {
    return std::make_unique<SleepingProdForecaster>(arms, horizon);
  };
}

}  // namespace nsbandit::prod
