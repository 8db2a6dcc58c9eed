#pragma once

#include <vector>

#include "nsbandit/policy.hpp"
#include "nsbandit/types.hpp"

namespace nsbandit::prod {

// Run-wide numerical diagnostics; the validation suites assert on these.
struct ProdDiagnostics {
  double max_fixed_point_residual = 0.0;  // max |f(alpha) - alpha|
  double max_weighted_regret = 0.0;       // max |sum_k p_k r_k|
  double max_estimate_excess = 0.0;       // max (max_k |r_k - m_k| - 2||dl||_inf)
  bool eta_within_bounds = true;          // every eta in (0, 1/4]
  bool eta_monotone = true;               // eta nonincreasing per expert
};

// Optimistic experts algorithm with one adaptive learning rate per expert.
// The played distribution is
//   p_{t,k} ~ eta_{t-1,k} w_{t-1,k} exp(eta_{t-1,k} m_{t,k}),
// with the optimistic estimate m_{t,k} = alpha - l_{t-1,k}, where alpha is a
// fixed point of alpha = <p_t(alpha), l_{t-1}>, found by bisection to within
// 1/T. The weight update is
//   w_{t,k} = (w_{t-1,k} exp(eta_{t-1,k} r_{t,k}
//              - eta_{t-1,k}^2 (r_{t,k} - m_{t,k})^2))^{eta_{t,k}/eta_{t-1,k}}
// with r_{t,k} = <p_t, l_t> - l_{t,k} and
//   eta_{t,k} = min{1/4, sqrt(ln K / (1 + sum_s (r_{s,k} - m_{s,k})^2))}.
// Weights are kept in log space.
class ProdForecaster : public FullInfoPolicy {
 public:
  ProdForecaster(Index arms, Index horizon);

  // Test hook: a forecaster with prescribed internal state.
  static ProdForecaster with_state(Index horizon, const Vector& log_w,
                                   const Vector& eta, const Vector& c,
                                   const Vector& last_loss);

  Vector play() override;
  void observe(const Vector& loss) override;

  double fixed_point_alpha(const Vector& prev_loss) const;

  const Vector& last_estimate() const { return m_; }
  const Vector& etas() const { return eta_; }
  const Vector& log_weights() const { return log_w_; }
  double tolerance() const { return tol_; }
  const ProdDiagnostics& diagnostics() const { return diag_; }

 private:
  Index arms_;
  Index horizon_;
  double tol_;
  int bisect_iters_;
  double ln_experts_;
  Vector log_w_, eta_, c_;
  Vector last_loss_;
  Vector p_, m_;
  ProdDiagnostics diag_;
};

// The same algorithm run over K*T sleeping experts (s, k): expert (s, k)
// mirrors arm k from step s on and is inert before. Asleep experts receive
// the algorithm's own loss and a zero estimate, so their state provably
// never changes; they are therefore instantiated lazily at their wake step,
// and the asleep block enters normalizations in closed form. Learning rates
// use ln(K*T) in place of ln K.
class SleepingProdForecaster : public FullInfoPolicy {
 public:
  SleepingProdForecaster(Index arms, Index horizon);

  Vector play() override;
  void observe(const Vector& loss) override;

  const ProdDiagnostics& diagnostics() const { return diag_; }
  // max |<p~_t, l~_t> - <p_t, l_t>| over the run, the Algorithm 3/4
  // expected-loss identity evaluated with the full expert pool.
  double max_identity_gap() const { return max_identity_gap_; }
  Index instantiated_experts() const { return static_cast<Index>(experts_.size()); }
  double tolerance() const { return tol_; }
  double initial_eta() const { return init_eta_; }
  double initial_log_weight() const { return init_log_w_; }

  struct ExpertState {
    double log_w, eta, c;
  };
  // Expert (s, k); only instantiated (s <= current step) experts exist.
  const ExpertState& expert(Index wake_step, Index arm) const;

 private:
  double fixed_point_alpha() const;

  Index arms_, horizon_;
  Index t_ = 0;  // completed steps
  double tol_;
  int bisect_iters_;
  double ln_pool_;
  double init_log_w_, init_eta_;
  std::vector<ExpertState> experts_;  // index (s-1)*K + k, s <= t
  Vector last_loss_;
  Vector p_, m_, awake_mass_;
  double alpha_ = 0.0;
  ProdDiagnostics diag_;
  double max_identity_gap_ = 0.0;
};

FullInfoFactory make_prod_factory(Index arms, Index horizon);
FullInfoFactory make_prod_sleeping_factory(Index arms, Index horizon);

}  // namespace nsbandit::prod
