#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "repnet/model.hpp"
#include "repnet/rng.hpp"

namespace repnet::pathsim {

struct PathEvent {
  enum class Type { kSever, kOstracize, kForm, kEnter, kReenter };
  double time;
  Type type;
  int agent_i;
  int agent_j;  // -1 for agent-level events
};

/// Contiguous stretch during which the (unordered) link i-j was active, with
/// the endpoints' true qualities over that stretch. end = inf for links still
/// active at the horizon (both endpoints classified as surviving).
struct LinkEpisode {
  int i, j;
  double begin, end;
  double quality_i, quality_j;
};

/// Discretized state of one path: per-agent true quality, cumulative
/// effective observation time, precision-weighted signal sum, presence
/// status, and per-pair link flags.
struct PathState {
  enum class Status { kWaiting, kActive, kDowntime, kOut };

  double time = 0.0;
  Eigen::VectorXd quality;
  Eigen::VectorXd info_time;       // I_i = integral of the consumption rate
  Eigen::VectorXd signal_sum;      // tau-weighted cumulative signal
  Eigen::VectorXd posterior_prec;  // recursively updated; equals 1/sigma2 + tau*I
  std::vector<Status> status;
  Eigen::VectorXd ready_time;      // re-entry time while in downtime
  Eigen::VectorXi attempt;
  std::vector<std::vector<char>> linked;

  double posterior_mean(const AgentPrior& prior, int i) const {
    return (prior.mu / prior.sigma2 + signal_sum(i)) / (1.0 / prior.sigma2 + prior.tau * info_time(i));
  }
};

struct PathResult {
  Eigen::VectorXd actual;         // permanent exit time, inf if alive at horizon
  Eigen::VectorXd survive_start;  // begin of the surviving stint, inf otherwise
  Eigen::VectorXd qualities;      // true quality of the last attempt
  Eigen::VectorXi attempts;
  std::vector<LinkEpisode> episodes;
  std::vector<PathEvent> events;
  double horizon = 0.0;

  /// Ex-post welfare evaluated from true qualities over the link episodes.
  double welfare_total = 0.0;
  Eigen::VectorXd welfare_per_agent;
};

/// Drives one replication. Construct, then either call step() manually or
/// run() to the horizon.
class PathEngine {
 public:
  PathEngine(const RunConfig& config, std::uint64_t replication);

  /// Advances the diffusion by dt: entry/re-entry processing, signal
  /// accumulation at the current consumption rates, Bayesian posterior
  /// update, severance below the active threshold, and (link_formation)
  /// creation of new links.
  void step(double dt);

  PathResult finish(const EconomyParams& econ);  // closes episodes at the current time

  const PathState& state() const { return state_; }

 private:
  double consumption_rate(int i) const;
  void begin_stint(int i, bool log_event);
  void ostracize(int i);
  void process_arrivals();
  void maybe_form_links();

  const RunConfig& config_;
  std::uint64_t replication_;
  double threshold_;
  PathState state_;
  std::vector<CounterRng> streams_;
  std::vector<std::vector<int>> omega_;
  Eigen::VectorXd stint_begin_;
  Eigen::VectorXd exit_time_;
  std::vector<PathEvent> events_;
  std::vector<LinkEpisode> episodes_;        // closed
  std::vector<std::vector<double>> open_begin_;  // open episode begin per pair (upper-tri), <0 if none
};

/// Horizon with residual unconditional hitting mass below 1% for every agent
/// (at the active severance threshold).
double default_horizon(const RunConfig& config);

/// Integrates one full path on the configured grid and returns ostracism
/// times, the event log, realized qualities, and true-quality welfare.
PathResult run_path(const RunConfig& config, std::uint64_t replication);

}  // namespace repnet::pathsim
