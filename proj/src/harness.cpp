#include "nsbandit/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "nsbandit/banditalg.hpp"
#include "nsbandit/gdexperts.hpp"
#include "nsbandit/prodexperts.hpp"
#include "nsbandit/random.hpp"

namespace nsbandit::harness {

namespace {

double regret_increment(double suffered, double best) {
  const double inc = suffered - best;
  if (inc < -1e-9)
    throw std::logic_error("negative regret increment; comparator broken");
  return inc < 0.0 ? 0.0 : inc;
}

void check_simplex(const Vector& p) {
  if ((p.array() < -1e-12).any() || std::abs(p.sum() - 1.0) > 1e-9)
    throw std::logic_error("played point is not on the probability simplex");
}

}  // namespace

RegretTrace run_bandit(BanditPolicy& alg, const env::DistributionSequence& seq,
                       std::uint64_t seed, const std::string& alg_id,
                       const std::string& env_id, int rep) {
  Rng loss_rng = derive_rng(seed, "env");
  RegretTrace trace{Vector(seq.horizon()), alg_id, env_id, seed, rep};
  double acc = 0.0;
  for (Index t = 1; t <= seq.horizon(); ++t) {
    const Vector loss = env::sample_losses(seq, t, loss_rng);
    const Index arm = alg.select_arm();
    alg.observe(arm, loss[arm]);
    const Vector mu = seq.mean_vector(t);
    acc += regret_increment(mu[arm], mu.minCoeff());
    trace.cum[t - 1] = acc;
  }
  return trace;
}

RegretTrace run_fullinfo(FullInfoPolicy& alg, const env::DistributionSequence& seq,
                         std::uint64_t seed, const std::string& alg_id,
                         const std::string& env_id, int rep) {
  Rng loss_rng = derive_rng(seed, "env");
  RegretTrace trace{Vector(seq.horizon()), alg_id, env_id, seed, rep};
  double acc = 0.0;
  for (Index t = 1; t <= seq.horizon(); ++t) {
    const Vector p = alg.play();
    check_simplex(p);
    const Vector loss = env::sample_losses(seq, t, loss_rng);
    alg.observe(loss);
    const Vector mu = seq.mean_vector(t);
    acc += regret_increment(p.dot(mu), mu.minCoeff());
    trace.cum[t - 1] = acc;
  }
  return trace;
}

std::vector<RegretTrace> replicate_bandit(const BanditFactory& factory,
                                          const env::DistributionSequence& seq,
                                          std::uint64_t base_seed, int replications,
                                          const std::string& alg_id,
                                          const std::string& env_id) {
  std::vector<RegretTrace> traces;
  traces.reserve(static_cast<size_t>(replications));
  for (int r = 0; r < replications; ++r) {
    const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(r);
    auto alg = factory(derive_seed(seed, "alg"));
    traces.push_back(run_bandit(*alg, seq, seed, alg_id, env_id, r));
  }
  return traces;
}

std::vector<RegretTrace> replicate_fullinfo(const FullInfoFactory& factory,
                                            const env::DistributionSequence& seq,
                                            std::uint64_t base_seed, int replications,
                                            const std::string& alg_id,
                                            const std::string& env_id) {
  std::vector<RegretTrace> traces;
  traces.reserve(static_cast<size_t>(replications));
  for (int r = 0; r < replications; ++r) {
    const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(r);
    auto alg = factory(derive_seed(seed, "alg"));
    traces.push_back(run_fullinfo(*alg, seq, seed, alg_id, env_id, r));
  }
  return traces;
}

RegretTrace run_baseline(BaselineKind kind, Index arm,
                         const env::DistributionSequence& seq, std::uint64_t seed,
                         const std::string& env_id, int rep) {
  if (kind == BaselineKind::kUniformRandom) {
    bandit::UniformRandomPolicy alg(seq.arms(), derive_seed(seed, "alg"));
    return run_bandit(alg, seq, seed, "uniform-random", env_id, rep);
  }
  bandit::FixedArmPolicy alg(seq.arms(), arm);
  return run_bandit(alg, seq, seed, "fixed-arm", env_id, rep);
}

double mean_final_regret(const std::vector<RegretTrace>& traces) {
  if (traces.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& t : traces) sum += t.cum[t.cum.size() - 1];
  return sum / static_cast<double>(traces.size());
}

double stderr_final_regret(const std::vector<RegretTrace>& traces) {
  const size_t n = traces.size();
  if (n < 2) return 0.0;
  const double mean = mean_final_regret(traces);
  double ss = 0.0;
  for (const auto& t : traces) {
    const double d = t.cum[t.cum.size() - 1] - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void write_traces_csv(std::ostream& out, const std::vector<RegretTrace>& traces) {
  out << "step,cum_regret,alg,env,seed,rep\n";
  for (const auto& trace : traces) {
    for (Index t = 0; t < trace.cum.size(); ++t) {
      out << (t + 1) << ',' << format_number(trace.cum[t]) << ',' << trace.alg_id
          << ',' << trace.env_id << ',' << trace.seed << ',' << trace.rep << '\n';
    }
  }
}

// ---- experiment configuration -------------------------------------------

std::string EnvSpec::id() const {
  std::ostringstream s;
  if (kind == "switching") {
    s << "switching(gamma=" << gamma << ";gap=" << format_number(gap) << ")";
  } else if (kind == "drifting") {
    s << "drifting(V=" << format_number(drift) << ";s2=" << format_number(sigma2)
      << ")";
  } else {
    s << "file(" << path << ")";
  }
  return s.str();
}

bool is_bandit_alg(const std::string& name) {
  if (name == "rerun-ucbv" || name == "uniform-random" || name == "fixed-arm")
    return true;
  if (name == "gd-fixed" || name == "gd-adaptive" || name == "prod" ||
      name == "prod-sleeping")
    return false;
  throw std::invalid_argument("unknown algorithm: " + name);
}

env::DistributionSequence build_sequence(const EnvSpec& spec, Index arms,
                                         Index horizon, std::uint64_t seed) {
  Rng rng = derive_rng(seed, "gen");
  if (spec.kind == "switching")
    return env::gen_switching(arms, horizon, spec.gamma, spec.gap, rng);
  if (spec.kind == "drifting")
    return env::gen_drifting(arms, horizon, spec.drift, spec.sigma2, rng);
  if (spec.kind == "file") {
    std::ifstream in(spec.path);
    if (!in) throw std::runtime_error("cannot open sequence file: " + spec.path);
    std::stringstream buf;
    buf << in.rdbuf();
    return env::sequence_from_json(buf.str());
  }
  throw std::invalid_argument("unknown environment kind: " + spec.kind);
}

BanditFactory make_bandit_factory(const AlgSpec& alg,
                                  const env::DistributionSequence& seq) {
  const Index arms = seq.arms();
  const Index horizon = seq.horizon();
  if (alg.name == "rerun-ucbv") {
    const auto params = env::compute_params(seq);
    bandit::RerunUcbVConfig config;
    config.arms = arms;
    config.horizon = horizon;
    config.block_length =
        alg.block > 0 ? alg.block
                      : bandit::block_length(arms, horizon, params.drift,
                                             params.variance_budget);
    config.delta = alg.delta;
    return bandit::make_rerun_ucbv_factory(config);
  }
  if (alg.name == "uniform-random") return bandit::make_uniform_random_factory(arms);
  if (alg.name == "fixed-arm") return bandit::make_fixed_arm_factory(arms, alg.arm);
  throw std::invalid_argument("not a bandit algorithm: " + alg.name);
}

FullInfoFactory make_fullinfo_factory(const AlgSpec& alg,
                                      const env::DistributionSequence& seq) {
  const Index arms = seq.arms();
  const Index horizon = seq.horizon();
  if (alg.name == "gd-fixed") {
    double eta = alg.eta;
    if (eta <= 0.0) {
      const auto params = env::compute_params(seq);
      const double gamma =
          alg.gamma > 0 ? static_cast<double>(alg.gamma) : params.gamma;
      eta = gd::theorem3_eta(gamma, params.variance_budget, arms);
    }
    return gd::make_gd_fixed_factory(arms, eta);
  }
  if (alg.name == "gd-adaptive") {
    Index block = alg.block;
    if (block <= 0) {
      const auto params = env::compute_params(seq);
      block = gd::theorem4_block(params.variance_budget, params.drift, horizon);
    }
    return gd::make_gd_adaptive_factory(arms, block);
  }
  if (alg.name == "prod") return prod::make_prod_factory(arms, horizon);
  if (alg.name == "prod-sleeping")
    return prod::make_prod_sleeping_factory(arms, horizon);
  throw std::invalid_argument("not a full-information algorithm: " + alg.name);
}

ExperimentConfig config_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  ExperimentConfig c;
  if (doc.contains("env")) {
    const auto& e = doc["env"];
    if (e.contains("kind")) c.env.kind = e["kind"].get<std::string>();
    if (e.contains("gamma")) c.env.gamma = e["gamma"].get<Index>();
    if (e.contains("gap")) c.env.gap = e["gap"].get<double>();
    if (e.contains("drift")) c.env.drift = e["drift"].get<double>();
    if (e.contains("sigma2")) c.env.sigma2 = e["sigma2"].get<double>();
    if (e.contains("path")) c.env.path = e["path"].get<std::string>();
  }
  if (doc.contains("alg")) {
    const auto& a = doc["alg"];
    if (a.contains("name")) c.alg.name = a["name"].get<std::string>();
    if (a.contains("delta")) c.alg.delta = a["delta"].get<double>();
    if (a.contains("block")) c.alg.block = a["block"].get<Index>();
    if (a.contains("eta")) c.alg.eta = a["eta"].get<double>();
    if (a.contains("gamma")) c.alg.gamma = a["gamma"].get<Index>();
    if (a.contains("arm")) c.alg.arm = a["arm"].get<Index>();
  }
  if (doc.contains("T")) c.horizon = doc["T"].get<Index>();
  if (doc.contains("K")) c.arms = doc["K"].get<Index>();
  if (doc.contains("replications")) c.replications = doc["replications"].get<int>();
  if (doc.contains("base_seed")) c.base_seed = doc["base_seed"].get<std::uint64_t>();
  if (doc.contains("out_csv")) c.out_csv = doc["out_csv"].get<std::string>();
  if (doc.contains("out_svg")) c.out_svg = doc["out_svg"].get<std::string>();
  return c;
}

std::vector<RegretTrace> run_experiment(const ExperimentConfig& config) {
  const auto seq = build_sequence(config.env, config.arms, config.horizon,
                                  config.base_seed);
  std::vector<RegretTrace> traces;
  const std::string env_id = config.env.id();
  if (config.alg.name == "uniform-random" || config.alg.name == "fixed-arm") {
    const auto kind = config.alg.name == "uniform-random"
                          ? BaselineKind::kUniformRandom
                          : BaselineKind::kFixedArm;
    for (int r = 0; r < config.replications; ++r)
      traces.push_back(run_baseline(kind, config.alg.arm, seq,
                                    config.base_seed + static_cast<std::uint64_t>(r),
                                    env_id, r));
  } else if (is_bandit_alg(config.alg.name)) {
    traces = replicate_bandit(make_bandit_factory(config.alg, seq), seq,
                              config.base_seed, config.replications,
                              config.alg.id(), env_id);
  } else {
    traces = replicate_fullinfo(make_fullinfo_factory(config.alg, seq), seq,
                                config.base_seed, config.replications,
                                config.alg.id(), env_id);
  }
  if (!config.out_csv.empty()) {
    std::ofstream out(config.out_csv, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + config.out_csv);
    write_traces_csv(out, traces);
  }
  if (!config.out_svg.empty()) {
    std::ofstream out(config.out_svg, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + config.out_svg);
    out << emit_plot(traces);
  }
  return traces;
}

std::vector<SweepRow> sweep(const SweepSpec& spec, std::ostream& out) {
  out << "alg,env,T,K,reps,mean_final_regret,stderr_final_regret\n";
  std::vector<SweepRow> rows;
  for (const auto& alg : spec.algs) {
    for (const auto& envspec : spec.envs) {
      for (const Index horizon : spec.horizons) {
        ExperimentConfig c;
        c.env = envspec;
        c.alg = alg;
        c.horizon = horizon;
        c.arms = spec.arms;
        c.replications = spec.replications;
        c.base_seed = spec.base_seed;
        const auto traces = run_experiment(c);
        SweepRow row{alg.id(),
                     envspec.id(),
                     horizon,
                     spec.arms,
                     spec.replications,
                     mean_final_regret(traces),
                     stderr_final_regret(traces)};
        out << row.alg_id << ',' << row.env_id << ',' << row.horizon << ','
            << row.arms << ',' << row.replications << ','
            << format_number(row.mean_final) << ','
            << format_number(row.stderr_final) << '\n';
        out.flush();
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace nsbandit::harness
