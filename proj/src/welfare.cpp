#include "repnet/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "repnet/analytics.hpp"
#include "repnet/pathsim.hpp"

namespace repnet::welfare {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Discounted measure of [lo, hi) at rate rho; 0 when the interval is empty.
double discount_integral(double lo, double hi, double rho) {
  if (!(lo < hi)) return 0.0;
  return (std::exp(-rho * lo) - (hi == kInf ? 0.0 : std::exp(-rho * hi))) / rho;
}

/// Runs fn(r) for r in [0, count) over `threads` workers with a static
/// contiguous split. fn must only write to per-index storage.
template <class Fn>
void parallel_for(int count, int threads, const Fn& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int r = 0; r < count; ++r) fn(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    const int lo = static_cast<int>(static_cast<long>(count) * t / threads);
    const int hi = static_cast<int>(static_cast<long>(count) * (t + 1) / threads);
    pool.emplace_back([lo, hi, &fn] {
      for (int r = lo; r < hi; ++r) fn(r);
    });
  }
  for (std::thread& th : pool) th.join();
}

/// Shared grid-point evaluation for the sweep functions.
welfare::WelfareEstimate sweep_estimate(RunConfig cfg, int threads, bool per_agent,
                                        double total_scale = 1.0);

}  // namespace

void parallel_replications(int count, int threads, const std::function<void(int)>& fn) {
  parallel_for(count, threads, fn);
}

double pairwise_sum(const double* data, std::size_t count) {
  if (count <= 8) {
    double s = 0.0;
    for (std::size_t k = 0; k < count; ++k) s += data[k];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

double pairwise_sum(const Eigen::VectorXd& v) {
  return pairwise_sum(v.data(), static_cast<std::size_t>(v.size()));
}

WelfareEstimate estimate_from_samples(const Eigen::VectorXd& samples) {
  WelfareEstimate est;
  est.replications = static_cast<int>(samples.size());
  if (est.replications == 0) return est;
  est.mean = pairwise_sum(samples) / est.replications;
  if (est.replications > 1) {
    const Eigen::VectorXd sq = (samples.array() - est.mean).square();
    const double var = pairwise_sum(sq) / (est.replications - 1);
    est.std_error = std::sqrt(var / est.replications);
  }
  return est;
}

std::pair<double, Eigen::VectorXd> expost_welfare(const hitting::Timeline& timeline,
                                                  const NetworkConstraint& constraint,
                                                  const std::vector<AgentPrior>& priors,
                                                  const EconomyParams& econ,
                                                  const ExtensionConfig& extension) {
  const int n = constraint.n;
  const double threshold = extension.severance_threshold(econ.cost);
  const auto neighbors = constraint.neighbor_lists();

  Eigen::VectorXd value(n);
  for (int j = 0; j < n; ++j)
    value(j) = analytics::conditional_mean_given_survival(priors[j], threshold) - econ.cost;

  Eigen::VectorXd per_agent = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j : neighbors[i]) {
      const double start_j = timeline.survive_start(j);
      if (start_j == kInf) continue;
      double acc = 0.0;
      for (const hitting::Interval& iv : timeline.active[i])
        acc += discount_integral(std::max(iv.begin, start_j), iv.end, econ.rho);
      per_agent(i) += value(j) * acc;
    }
  }
  return {per_agent.sum(), per_agent};
}

SampleSet exante_welfare_samples(const RunConfig& config, int threads, bool per_agent) {
  const int reps = config.mc.replications;
  const int n = config.constraint.n;

  RunConfig cfg = config;
  if (cfg.mc.engine == EngineKind::kPath && cfg.mc.horizon <= 0.0)
    cfg.mc.horizon = pathsim::default_horizon(cfg);

  SampleSet out;
  out.totals.resize(reps);
  if (per_agent) out.per_agent.resize(reps, n);

  parallel_for(reps, threads, [&](int r) {
    double total;
    Eigen::VectorXd per;
    if (cfg.mc.engine == EngineKind::kAnalytic) {
      const hitting::RealizationDraw draw = hitting::sample_realization(cfg, r);
      std::tie(total, per) =
          expost_welfare(draw.timeline, cfg.constraint, cfg.priors, cfg.econ, cfg.extension);
    } else {
      const pathsim::PathResult path = pathsim::run_path(cfg, r);
      total = path.welfare_total;
      per = path.welfare_per_agent;
    }
    out.totals(r) = total;
    if (per_agent) out.per_agent.row(r) = per.transpose();
  });
  return out;
}

WelfareEstimate exante_welfare(const RunConfig& config, int threads, bool per_agent) {
  const SampleSet samples = exante_welfare_samples(config, threads, per_agent);
  WelfareEstimate est = estimate_from_samples(samples.totals);
  if (per_agent) {
    const int n = static_cast<int>(samples.per_agent.cols());
    est.per_agent_mean.resize(n);
    est.per_agent_std_error.resize(n);
    for (int j = 0; j < n; ++j) {
      const WelfareEstimate col = estimate_from_samples(samples.per_agent.col(j));
      est.per_agent_mean(j) = col.mean;
      est.per_agent_std_error(j) = col.std_error;
    }
  }
  return est;
}

namespace {

welfare::WelfareEstimate sweep_estimate(RunConfig cfg, int threads, bool per_agent,
                                        double total_scale) {
  const SampleSet samples = exante_welfare_samples(validate(cfg), threads, per_agent);
  WelfareEstimate est = estimate_from_samples(samples.totals * total_scale);
  if (per_agent) {
    const int n = static_cast<int>(samples.per_agent.cols());
    est.per_agent_mean.resize(n);
    est.per_agent_std_error.resize(n);
    for (int j = 0; j < n; ++j) {
      const WelfareEstimate col = estimate_from_samples(samples.per_agent.col(j));
      est.per_agent_mean(j) = col.mean;
      est.per_agent_std_error(j) = col.std_error;
    }
  }
  return est;
}

}  // namespace

std::pair<double, Eigen::VectorXd> no_learning_welfare(const NetworkConstraint& constraint,
                                                       const std::vector<AgentPrior>& priors,
                                                       const EconomyParams& econ) {
  Eigen::VectorXd per_agent = Eigen::VectorXd::Zero(constraint.n);
  const auto neighbors = constraint.neighbor_lists();
  for (int i = 0; i < constraint.n; ++i)
    for (int j : neighbors[i]) per_agent(i) += (priors[j].mu - econ.cost) / econ.rho;
  return {per_agent.sum(), per_agent};
}

double fast_learning_limit_welfare(const NetworkConstraint& constraint,
                                   const std::vector<AgentPrior>& priors,
                                   const EconomyParams& econ) {
  const auto neighbors = constraint.neighbor_lists();
  double total = 0.0;
  for (int i = 0; i < constraint.n; ++i) {
    const double p = analytics::survival_probability(priors[i], econ.cost);
    double flow = 0.0;
    for (int j : neighbors[i]) flow += priors[j].mu - econ.cost;
    total += p * flow / econ.rho;
  }
  return total;
}

std::vector<RankedTopology> compare_topologies(const std::vector<NetworkConstraint>& candidates,
                                               const std::vector<AgentPrior>& agents,
                                               const EconomyParams& econ, const McConfig& mc,
                                               const ExtensionConfig& extension, int threads) {
  if (candidates.empty()) throw std::invalid_argument("no candidate topologies");

  std::vector<Eigen::VectorXd> samples(candidates.size());
  std::vector<RankedTopology> ranked(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    RunConfig cfg{agents, candidates[k], econ, extension, mc};
    samples[k] = exante_welfare_samples(validate(cfg), threads).totals;
    ranked[k].index = static_cast<int>(k);
    ranked[k].estimate = estimate_from_samples(samples[k]);
  }

  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.estimate.mean > b.estimate.mean;
  });
  const Eigen::VectorXd& top = samples[ranked.front().index];
  for (RankedTopology& rt : ranked) {
    const Eigen::VectorXd diff = top - samples[rt.index];
    const WelfareEstimate d = estimate_from_samples(diff);
    rt.gap_mean = d.mean;
    rt.gap_std_error = d.std_error;
  }
  return ranked;
}

std::vector<SweepPoint> star_sweep(const AgentPrior& periphery, int periphery_count,
                                   double center_sigma2, const std::vector<double>& mu1_grid,
                                   const std::vector<double>& tau1_grid,
                                   const EconomyParams& econ, const McConfig& mc, int threads,
                                   bool per_agent) {
  std::vector<SweepPoint> points;
  points.reserve(mu1_grid.size() * tau1_grid.size());
  const int n = periphery_count + 1;
  for (double mu1 : mu1_grid) {
    for (double tau1 : tau1_grid) {
      RunConfig cfg;
      cfg.priors.assign(n, periphery);
      cfg.priors[0] = AgentPrior{mu1, center_sigma2, tau1, 0.0};
      cfg.constraint = star_network(n);
      cfg.econ = econ;
      cfg.mc = mc;
      points.push_back({{mu1, tau1}, sweep_estimate(cfg, threads, per_agent)});
    }
  }
  return points;
}

std::vector<SweepPoint> ring_compare(const AgentPrior& agent, const std::vector<int>& sizes,
                                     const EconomyParams& econ, const McConfig& mc,
                                     int threads, bool per_agent) {
  std::vector<SweepPoint> points;
  points.reserve(sizes.size());
  for (int n : sizes) {
    RunConfig cfg;
    cfg.priors.assign(n, agent);
    cfg.constraint = ring_network(n);
    cfg.econ = econ;
    cfg.mc = mc;
    points.push_back(
        {{static_cast<double>(n)}, sweep_estimate(cfg, threads, per_agent, 1.0 / n)});
  }
  return points;
}

std::vector<SweepPoint> entry_sweep(const RunConfig& base, int agent,
                                    const std::vector<double>& entry_grid, int threads,
                                    bool per_agent) {
  if (base.extension.variant != ExtensionVariant::kEntry)
    throw ConfigError("entry_sweep requires the entry variant");
  if (agent < 0 || agent >= base.constraint.n)
    throw ConfigError("entry_sweep: agent index out of range");
  std::vector<SweepPoint> points;
  points.reserve(entry_grid.size());
  for (double e : entry_grid) {
    RunConfig cfg = base;
    cfg.priors[agent].entry_time = e;
    points.push_back({{e}, sweep_estimate(cfg, threads, per_agent)});
  }
  return points;
}

std::vector<SweepPoint> subsidy_sweep(const RunConfig& base,
                                      const std::vector<double>& delta_grid, int threads,
                                      bool per_agent) {
  std::vector<SweepPoint> points;
  points.reserve(delta_grid.size());
  for (double delta : delta_grid) {
    RunConfig cfg = base;
    cfg.extension = ExtensionConfig{};
    cfg.extension.variant = ExtensionVariant::kSubsidy;
    cfg.extension.delta = delta;
    points.push_back({{delta}, sweep_estimate(cfg, threads, per_agent)});
  }
  return points;
}

std::vector<SweepPoint> reentry_sweep(const RunConfig& base, const std::vector<int>& r_grid,
                                      const std::vector<double>& l_grid,
                                      const std::vector<double>& tau_scale_grid, int threads,
                                      bool per_agent) {
  std::vector<SweepPoint> points;
  points.reserve(r_grid.size() * l_grid.size() * tau_scale_grid.size());
  for (int r : r_grid) {
    for (double l : l_grid) {
      for (double scale : tau_scale_grid) {
        RunConfig cfg = base;
        cfg.extension = ExtensionConfig{};
        cfg.extension.variant = ExtensionVariant::kReentry;
        cfg.extension.max_attempts = r;
        cfg.extension.downtime = l;
        for (AgentPrior& p : cfg.priors) p.tau *= scale;
        points.push_back({{static_cast<double>(r), l, scale},
                          sweep_estimate(cfg, threads, per_agent)});
      }
    }
  }
  return points;
}

}  // namespace repnet::welfare
