#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "repnet/model.hpp"
#include "repnet/rng.hpp"

namespace repnet::hitting {

/// One Monte Carlo draw of per-agent hitting times, all entries > 0 and
/// possibly infinite.
struct HittingRealization {
  enum class Kind { kUnscaled, kActual };
  Eigen::VectorXd times;
  Kind kind = Kind::kUnscaled;
};

/// Half-open presence interval [begin, end) of an agent in the network.
struct Interval {
  double begin;
  double end;
};

/// Full outcome of the event-driven consumption simulation. `actual(i)` is
/// the time agent i is permanently excluded (inf if it survives some stint),
/// `survive_start(i)` the start time of its surviving stint (inf otherwise).
struct Timeline {
  Eigen::VectorXd actual;
  Eigen::VectorXd survive_start;
  std::vector<std::vector<Interval>> active;
  Eigen::VectorXi attempts;
};

/// One quality draw from the agent's prior, via the inverse normal CDF so
/// that a fixed uniform corresponds to a fixed quality quantile.
double sample_quality(const AgentPrior& prior, CounterRng& rng);

/// Samples the base-precision hitting time given the true quality: infinite
/// with probability P(S_i | q), otherwise drawn by bisection-inverting the
/// conditional hitting CDF. `cost` is the active severance threshold.
double sample_unscaled_hitting_time(double q, const AgentPrior& prior, double cost,
                                    CounterRng& rng);

/// Supplies the base-precision time budget for (agent, attempt).
using BudgetSource = std::function<double(int agent, int attempt)>;

/// Core event loop: agents consume their unscaled budgets at a rate equal to
/// their current number of present linked neighbors (floor 1 once learning
/// has started; 0 while an agent's only constraint-neighbors have not yet
/// entered). Handles entry times and up to `max_attempts` re-entries with
/// `downtime` between them.
Timeline simulate_timeline(const NetworkConstraint& constraint,
                           const Eigen::VectorXd& entry_times, const BudgetSource& budgets,
                           int max_attempts, double downtime);

/// Maps unscaled hitting times to actual network-scaled ostracism times.
/// Finiteness is preserved entrywise.
HittingRealization map_hitting_times(const HittingRealization& unscaled,
                                     const NetworkConstraint& constraint,
                                     const Eigen::VectorXd& entry_times);

/// One full replication: qualities, unscaled first-attempt times, and the
/// mapped timeline under the configured extension.
struct RealizationDraw {
  Eigen::VectorXd qualities;  // quality of the last attempt sampled per agent
  Eigen::VectorXd unscaled;   // first-attempt base-precision hitting times
  Timeline timeline;
};

RealizationDraw sample_realization(const RunConfig& config, std::uint64_t replication);

}  // namespace repnet::hitting
