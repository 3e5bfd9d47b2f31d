#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "repnet/hitting.hpp"
#include "repnet/model.hpp"

namespace repnet::welfare {

/// Runs fn(r) for every replication index in [0, count) over a static
/// contiguous split across `threads` workers. fn must only write to
/// per-index storage, which keeps results independent of the split.
void parallel_replications(int count, int threads, const std::function<void(int)>& fn);

/// Deterministic summation (pairwise tree) so that totals do not depend on
/// accumulation order or thread count.
double pairwise_sum(const double* data, std::size_t count);
double pairwise_sum(const Eigen::VectorXd& v);

struct WelfareEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int replications = 0;
  Eigen::VectorXd per_agent_mean;       // empty unless requested
  Eigen::VectorXd per_agent_std_error;  // empty unless requested
};

WelfareEstimate estimate_from_samples(const Eigen::VectorXd& samples);

/// Realized discounted welfare of one timeline. Each agent accrues, over its
/// own presence intervals, a flow from every constraint-neighbor whose
/// surviving stint has begun, valued at that neighbor's conditional mean
/// quality given survival minus the linking cost. Returns (total, per-agent).
std::pair<double, Eigen::VectorXd> expost_welfare(const hitting::Timeline& timeline,
                                                  const NetworkConstraint& constraint,
                                                  const std::vector<AgentPrior>& priors,
                                                  const EconomyParams& econ,
                                                  const ExtensionConfig& extension);

/// Per-replication welfare draws (totals, and optionally a replications x n
/// matrix of per-agent values). Deterministic for a fixed config regardless
/// of `threads`; identical seeds give identical samples, which makes paired
/// comparisons across configs exact.
struct SampleSet {
  Eigen::VectorXd totals;
  Eigen::MatrixXd per_agent;  // 0 x 0 unless requested
};
SampleSet exante_welfare_samples(const RunConfig& config, int threads = 1,
                                 bool per_agent = false);

/// Monte Carlo estimate of expected welfare under the configured engine.
WelfareEstimate exante_welfare(const RunConfig& config, int threads = 1,
                               bool per_agent = false);

/// W*: welfare with reputations frozen at the prior means (no severance).
/// Also the slow-learning limit; rho times this total is the flow limit of
/// rho * W as rho -> infinity.
std::pair<double, Eigen::VectorXd> no_learning_welfare(const NetworkConstraint& constraint,
                                                       const std::vector<AgentPrior>& priors,
                                                       const EconomyParams& econ);

/// Limit of expected welfare as learning becomes instantaneous:
/// (1/rho) * sum_i P(S_i) * sum_{j in N(i)} (mu_j - c). rho times this is
/// also the flow limit of rho * W as rho -> 0 (only the everlasting network
/// matters).
double fast_learning_limit_welfare(const NetworkConstraint& constraint,
                                   const std::vector<AgentPrior>& priors,
                                   const EconomyParams& econ);

/// One topology's estimate inside a ranked comparison, with a paired
/// difference (same random numbers) against the top-ranked topology.
struct RankedTopology {
  int index = 0;  // position in the input list
  WelfareEstimate estimate;
  double gap_mean = 0.0;       // top mean minus this mean, paired
  double gap_std_error = 0.0;  // 0 for the top entry
};

/// Estimates welfare for each candidate constraint over a common agent set
/// with common random numbers, and returns the list sorted by descending
/// mean.
std::vector<RankedTopology> compare_topologies(const std::vector<NetworkConstraint>& candidates,
                                               const std::vector<AgentPrior>& agents,
                                               const EconomyParams& econ, const McConfig& mc,
                                               const ExtensionConfig& extension = {},
                                               int threads = 1);

/// One grid point of a parameter sweep.
struct SweepPoint {
  std::vector<double> params;
  WelfareEstimate estimate;
};

/// Star with `periphery_count` identical periphery agents; sweeps the
/// center's prior mean and signal precision over the cartesian grid.
std::vector<SweepPoint> star_sweep(const AgentPrior& periphery, int periphery_count,
                                   double center_sigma2, const std::vector<double>& mu1_grid,
                                   const std::vector<double>& tau1_grid,
                                   const EconomyParams& econ, const McConfig& mc,
                                   int threads = 1, bool per_agent = false);

/// Per-capita welfare of rings of homogeneous agents at the given sizes.
std::vector<SweepPoint> ring_compare(const AgentPrior& agent, const std::vector<int>& sizes,
                                     const EconomyParams& econ, const McConfig& mc,
                                     int threads = 1, bool per_agent = false);

/// Sweeps one agent's entry time (entry variant required on `base`).
std::vector<SweepPoint> entry_sweep(const RunConfig& base, int agent,
                                    const std::vector<double>& entry_grid, int threads = 1,
                                    bool per_agent = false);

/// Sweeps the linking subsidy; delta = 0 reproduces the base model exactly.
std::vector<SweepPoint> subsidy_sweep(const RunConfig& base,
                                      const std::vector<double>& delta_grid, int threads = 1,
                                      bool per_agent = false);

/// Sweeps re-entry attempts R, downtime L, and a multiplier on every agent's
/// signal precision. Params per point: {R, L, tau_scale}.
std::vector<SweepPoint> reentry_sweep(const RunConfig& base, const std::vector<int>& r_grid,
                                      const std::vector<double>& l_grid,
                                      const std::vector<double>& tau_scale_grid,
                                      int threads = 1, bool per_agent = false);

}  // namespace repnet::welfare
