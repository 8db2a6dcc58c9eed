#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "nsbandit/envmodel.hpp"
#include "nsbandit/policy.hpp"
#include "nsbandit/types.hpp"

namespace nsbandit::harness {

// Per-step cumulative dynamic pseudo-regret of one run. Increments are
// mu_{t, a_t} - min_i mu_{t, i} (true means, never realized losses), so the
// trace is nondecreasing.
struct RegretTrace {
  Vector cum;
  std::string alg_id;
  std::string env_id;
  std::uint64_t seed = 0;
  int rep = 0;
};

// One bandit run: every step samples the full loss vector (so realizations
// depend only on the seed, not on the policy), reveals only the chosen
// arm's loss, and scores against the true means.
RegretTrace run_bandit(BanditPolicy& alg, const env::DistributionSequence& seq,
                       std::uint64_t seed, const std::string& alg_id,
                       const std::string& env_id, int rep = 0);

// One full-information run: the policy plays a distribution p_t, sees the
// whole realized loss vector, and is scored by <p_t, mu_t> - min_i mu_{t,i}
// (the exact expectation over its own randomization).
RegretTrace run_fullinfo(FullInfoPolicy& alg, const env::DistributionSequence& seq,
                         std::uint64_t seed, const std::string& alg_id,
                         const std::string& env_id, int rep = 0);

// Replication drivers; replication r uses seed base_seed + r, and the loss
// stream and policy-internal randomness use independent sub-streams.
std::vector<RegretTrace> replicate_bandit(const BanditFactory& factory,
                                          const env::DistributionSequence& seq,
                                          std::uint64_t base_seed, int replications,
                                          const std::string& alg_id,
                                          const std::string& env_id);
std::vector<RegretTrace> replicate_fullinfo(const FullInfoFactory& factory,
                                            const env::DistributionSequence& seq,
                                            std::uint64_t base_seed, int replications,
                                            const std::string& alg_id,
                                            const std::string& env_id);

// Baseline runs used for adversary probing and sanity checks.
enum class BaselineKind { kUniformRandom, kFixedArm };
RegretTrace run_baseline(BaselineKind kind, Index arm,
                         const env::DistributionSequence& seq, std::uint64_t seed,
                         const std::string& env_id, int rep = 0);

double mean_final_regret(const std::vector<RegretTrace>& traces);
double stderr_final_regret(const std::vector<RegretTrace>& traces);

// 12-significant-digit decimal rendering used by every text output.
std::string format_number(double x);

// CSV schema: header `step,cum_regret,alg,env,seed,rep`, one row per step
// per replication, deterministic bytes for a fixed config and seed.
void write_traces_csv(std::ostream& out, const std::vector<RegretTrace>& traces);

// One SVG document: a polyline per (alg, env) series of the mean trace with
// a shaded +/- standard-error band, linear axes and a legend.
std::string emit_plot(const std::vector<RegretTrace>& traces);

// ---- experiment configuration -------------------------------------------

struct EnvSpec {
  std::string kind = "switching";  // switching | drifting | file
  Index gamma = 2;                 // switching
  double gap = 0.5;                // switching
  double drift = 1.0;              // drifting
  double sigma2 = 0.0625;          // drifting, per-arm per-step variance
  std::string path;                // file
  std::string id() const;
};

struct AlgSpec {
  std::string name = "rerun-ucbv";
  double delta = 0.0;  // 0: default 1/(K*T)
  Index block = 0;     // 0: from the environment parameters
  double eta = 0.0;    // 0: from the environment parameters
  Index gamma = 0;     // 0: from the environment parameters (gd-fixed)
  Index arm = 0;       // fixed-arm baseline
  std::string id() const { return name; }
};

struct ExperimentConfig {
  EnvSpec env;
  AlgSpec alg;
  Index horizon = 1000;
  Index arms = 2;
  int replications = 1;
  std::uint64_t base_seed = 1;
  std::string out_csv;
  std::string out_svg;
};

ExperimentConfig config_from_json(const std::string& text);

bool is_bandit_alg(const std::string& name);

env::DistributionSequence build_sequence(const EnvSpec& spec, Index arms,
                                         Index horizon, std::uint64_t seed);

// Parameter-dependent algorithms draw their settings from compute_params of
// the true sequence unless the spec pins them explicitly.
BanditFactory make_bandit_factory(const AlgSpec& alg,
                                  const env::DistributionSequence& seq);
FullInfoFactory make_fullinfo_factory(const AlgSpec& alg,
                                      const env::DistributionSequence& seq);

std::vector<RegretTrace> run_experiment(const ExperimentConfig& config);

// Cartesian sweep over algorithms x environments x horizons; one row per
// cell with the replication mean and standard error of the final regret,
// written incrementally.
struct SweepRow {
  std::string alg_id, env_id;
  Index horizon = 0, arms = 0;
  int replications = 0;
  double mean_final = 0.0, stderr_final = 0.0;
};

struct SweepSpec {
  std::vector<AlgSpec> algs;
  std::vector<EnvSpec> envs;
  std::vector<Index> horizons;
  Index arms = 2;
  int replications = 1;
  std::uint64_t base_seed = 1;
};

std::vector<SweepRow> sweep(const SweepSpec& spec, std::ostream& out);

}  // namespace nsbandit::harness
