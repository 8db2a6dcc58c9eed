#include "nsbandit/envmodel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace nsbandit::env {

namespace {

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument(std::string(what) + " must lie in [0,1]");
}

}  // namespace

ArmDistribution ArmDistribution::point_mass(double value) {
  check_unit(value, "point mass value");
  ArmDistribution d;
  d.kind = DistKind::kPointMass;
  d.value = value;
  return d;
}

ArmDistribution ArmDistribution::two_point(double low, double high, double p_high) {
  check_unit(low, "two-point low");
  check_unit(high, "two-point high");
  check_unit(p_high, "two-point p_high");
  if (low > high) throw std::invalid_argument("two-point requires low <= high");
  ArmDistribution d;
  d.kind = DistKind::kTwoPoint;
  d.low = low;
  d.high = high;
  d.p_high = p_high;
  return d;
}

double ArmDistribution::mean() const {
  if (kind == DistKind::kPointMass) return value;
  return p_high * high + (1.0 - p_high) * low;
}

double ArmDistribution::variance() const {
  if (kind == DistKind::kPointMass) return 0.0;
  const double spread = high - low;
  return p_high * (1.0 - p_high) * spread * spread;
}

double ArmDistribution::sample(Rng& rng) const {
  const double u = rng.next_unit();
  if (kind == DistKind::kPointMass) return value;
  return u < p_high ? high : low;
}

DistributionSequence::DistributionSequence(Index horizon, Index arms)
    : horizon_(horizon), arms_(arms), grid_(static_cast<size_t>(horizon * arms)) {
  if (horizon < 1 || arms < 1)
    throw std::invalid_argument("sequence needs at least one step and one arm");
}

const ArmDistribution& DistributionSequence::at(Index t, Index i) const {
  if (t < 1 || t > horizon_ || i < 0 || i >= arms_)
    throw std::out_of_range("DistributionSequence::at");
  return grid_[static_cast<size_t>((t - 1) * arms_ + i)];
}

ArmDistribution& DistributionSequence::at(Index t, Index i) {
  if (t < 1 || t > horizon_ || i < 0 || i >= arms_)
    throw std::out_of_range("DistributionSequence::at");
  return grid_[static_cast<size_t>((t - 1) * arms_ + i)];
}

void DistributionSequence::set_row(Index t, const ArmDistribution& dist) {
  for (Index i = 0; i < arms_; ++i) at(t, i) = dist;
}

Vector DistributionSequence::mean_vector(Index t) const {
  Vector mu(arms_);
  for (Index i = 0; i < arms_; ++i) mu[i] = at(t, i).mean();
  return mu;
}

Vector DistributionSequence::variance_vector(Index t) const {
  Vector v(arms_);
  for (Index i = 0; i < arms_; ++i) v[i] = at(t, i).variance();
  return v;
}

NonStationarityParams compute_params(const DistributionSequence& seq) {
  NonStationarityParams out;
  Vector prev = Vector::Zero(seq.arms());  // mu_0 is the all-zero vector
  double gamma = 1.0, drift = 0.0, lambda = 0.0;
  for (Index t = 1; t <= seq.horizon(); ++t) {
    const Vector mu = seq.mean_vector(t);
    // Exact equality on stored parameters; generators reproduce repeated
    // configurations bit-identically, so no tolerance is wanted here.
    if (t >= 2 && !(mu.array() == prev.array()).all()) gamma += 1.0;
    drift += (mu - prev).lpNorm<Eigen::Infinity>();
    lambda += seq.variance_vector(t).sum();
    prev = mu;
  }
  out.gamma = gamma;
  out.drift = drift;
  out.variance_budget = lambda;
  return out;
}

Vector sample_losses(const DistributionSequence& seq, Index t, Rng& rng) {
  if (t < 1 || t > seq.horizon())
    throw std::out_of_range("sample_losses: step out of range");
  Vector loss(seq.arms());
  for (Index i = 0; i < seq.arms(); ++i) loss[i] = seq.at(t, i).sample(rng);
  return loss;
}

std::pair<ArmDistribution, ArmDistribution> lemma1_pair(double sigma, double epsilon) {
  if (!(sigma > 0.0 && sigma <= 0.5))
    throw std::invalid_argument("lemma1_pair: sigma must lie in (0, 1/2]");
  if (!(epsilon > 0.0 && epsilon <= sigma / std::sqrt(2.0)))
    throw std::invalid_argument("lemma1_pair: epsilon must lie in (0, sigma/sqrt(2)]");
  ArmDistribution q = ArmDistribution::two_point(0.0, 2.0 * sigma, 0.5);
  ArmDistribution p =
      ArmDistribution::two_point(0.0, 2.0 * sigma, (sigma - epsilon) / (2.0 * sigma));
  return {p, q};
}

double kl_two_point(const ArmDistribution& q, const ArmDistribution& p) {
  if (q.kind != DistKind::kTwoPoint || p.kind != DistKind::kTwoPoint)
    throw std::invalid_argument("kl_two_point: both arguments must be two-point");
  if (q.low != p.low || q.high != p.high)
    throw std::invalid_argument("kl_two_point: mismatched supports");
  const double qs[2] = {1.0 - q.p_high, q.p_high};
  const double ps[2] = {1.0 - p.p_high, p.p_high};
  double kl = 0.0;
  for (int x = 0; x < 2; ++x) {
    if (qs[x] == 0.0) continue;
    if (ps[x] == 0.0) return std::numeric_limits<double>::infinity();
    kl += qs[x] * std::log2(qs[x] / ps[x]);
  }
  return kl;
}

std::vector<Index> partition_even(Index total, Index parts) {
  if (parts < 1 || total < parts)
    throw std::invalid_argument("partition_even: need 1 <= parts <= total");
  std::vector<Index> sizes(static_cast<size_t>(parts), total / parts);
  const Index rem = total % parts;
  for (Index i = 0; i < rem; ++i) sizes[static_cast<size_t>(i)] += 1;
  return sizes;
}

DistributionSequence gen_switching(Index arms, Index horizon, Index gamma,
                                   double gap, Rng& rng) {
  if (gamma < 1 || gamma > horizon)
    throw std::invalid_argument("gen_switching: need 1 <= gamma <= T");
  if (!(gap > 0.0 && gap < 1.0))
    throw std::invalid_argument("gen_switching: gap must lie in (0,1)");
  if (arms < 2 && gamma > 1)
    throw std::invalid_argument("gen_switching: switches need at least two arms");

  const double base = (1.0 + gap) / 2.0;
  const double best = (1.0 - gap) / 2.0;
  const std::vector<Index> sizes = partition_even(horizon, gamma);

  DistributionSequence seq(horizon, arms);
  Index t = 1;
  int prev_best = -1;
  for (Index m = 0; m < gamma; ++m) {
    int best_arm = rng.next_below(static_cast<int>(arms));
    while (m > 0 && best_arm == prev_best)
      best_arm = rng.next_below(static_cast<int>(arms));
    prev_best = best_arm;
    for (Index s = 0; s < sizes[static_cast<size_t>(m)]; ++s, ++t) {
      for (Index i = 0; i < arms; ++i)
        seq.at(t, i) = ArmDistribution::point_mass(i == best_arm ? best : base);
    }
  }
  return seq;
}

DistributionSequence gen_drifting(Index arms, Index horizon, double drift_budget,
                                  double variance_per_step, Rng& rng) {
  if (!(variance_per_step >= 0.0 && variance_per_step <= 0.25))
    throw std::invalid_argument("gen_drifting: per-arm variance must lie in [0, 1/4]");
  if (drift_budget < 0.0)
    throw std::invalid_argument("gen_drifting: drift budget must be nonnegative");

  const double d = std::sqrt(variance_per_step);
  const double lo = d, hi = 1.0 - d;
  if (drift_budget < lo)
    throw std::invalid_argument("gen_drifting: budget cannot cover ||mu_1||_inf");

  // mu_1 drawn so its sup-norm never exceeds the budget.
  const double cap = std::min(hi, drift_budget);
  Vector mu(arms);
  for (Index i = 0; i < arms; ++i) mu[i] = rng.next_range(lo, cap);

  double step = 0.0;
  if (horizon > 1) {
    step = (drift_budget - mu.lpNorm<Eigen::Infinity>()) /
           static_cast<double>(horizon - 1);
    step *= 1.0 - 1e-9;  // keep the float total strictly inside the budget
    if (step > hi - lo)
      throw std::invalid_argument("gen_drifting: budget infeasible for this horizon");
  }

  DistributionSequence seq(horizon, arms);
  auto fill_row = [&](Index t) {
    for (Index i = 0; i < arms; ++i) {
      seq.at(t, i) = variance_per_step == 0.0
                         ? ArmDistribution::point_mass(mu[i])
                         : ArmDistribution::two_point(mu[i] - d, mu[i] + d, 0.5);
    }
  };

  fill_row(1);
  for (Index t = 2; t <= horizon; ++t) {
    // Direction with sup-norm one, so every step contributes exactly `step`
    // to the drift; signs flip at the box walls, which preserves magnitudes.
    Vector dir(arms);
    double norm = 0.0;
    for (Index i = 0; i < arms; ++i) {
      dir[i] = rng.next_range(-1.0, 1.0);
      norm = std::max(norm, std::abs(dir[i]));
    }
    if (norm == 0.0) {
      dir.setZero();
      dir[0] = 1.0;
      norm = 1.0;
    }
    for (Index i = 0; i < arms; ++i) {
      const double delta = step * dir[i] / norm;
      double next = mu[i] + delta;
      if (next < lo || next > hi) next = mu[i] - delta;
      mu[i] = std::clamp(next, lo, hi);
    }
    fill_row(t);
  }
  return seq;
}

std::string to_json(const DistributionSequence& seq) {
  nlohmann::ordered_json doc;
  doc["K"] = seq.arms();
  doc["T"] = seq.horizon();
  nlohmann::ordered_json grid = nlohmann::ordered_json::array();
  for (Index t = 1; t <= seq.horizon(); ++t) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Index i = 0; i < seq.arms(); ++i) {
      const ArmDistribution& a = seq.at(t, i);
      nlohmann::ordered_json cell;
      if (a.kind == DistKind::kPointMass) {
        cell["kind"] = "point_mass";
        cell["value"] = a.value;
      } else {
        cell["kind"] = "two_point";
        cell["low"] = a.low;
        cell["high"] = a.high;
        cell["p_high"] = a.p_high;
      }
      row.push_back(std::move(cell));
    }
    grid.push_back(std::move(row));
  }
  doc["grid"] = std::move(grid);
  return doc.dump();
}

DistributionSequence sequence_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  const Index arms = doc.at("K").get<Index>();
  const Index horizon = doc.at("T").get<Index>();
  const auto& grid = doc.at("grid");
  if (static_cast<Index>(grid.size()) != horizon)
    throw std::invalid_argument("sequence_from_json: grid has wrong row count");
  DistributionSequence seq(horizon, arms);
  for (Index t = 1; t <= horizon; ++t) {
    const auto& row = grid.at(static_cast<size_t>(t - 1));
    if (static_cast<Index>(row.size()) != arms)
      throw std::invalid_argument("sequence_from_json: row has wrong arm count");
    for (Index i = 0; i < arms; ++i) {
      const auto& cell = row.at(static_cast<size_t>(i));
      const std::string kind = cell.at("kind").get<std::string>();
      if (kind == "point_mass") {
        seq.at(t, i) = ArmDistribution::point_mass(cell.at("value").get<double>());
      } else if (kind == "two_point") {
        seq.at(t, i) = ArmDistribution::two_point(cell.at("low").get<double>(),
                                                  cell.at("high").get<double>(),
                                                  cell.at("p_high").get<double>());
      } else {
        throw std::invalid_argument("sequence_from_json: unknown kind " + kind);
      }
    }
  }
  return seq;
}

}  // namespace nsbandit::env
