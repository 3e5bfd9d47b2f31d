#include "repnet/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "repnet/analytics.hpp"
#include "repnet/normal.hpp"

namespace repnet::hitting {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double sample_quality(const AgentPrior& prior, CounterRng& rng) {
  return prior.mu + std::sqrt(prior.sigma2) * norm_quantile(rng.uniform());
}

double sample_unscaled_hitting_time(double q, const AgentPrior& prior, double cost,
                                    CounterRng& rng) {
  const double u = rng.uniform();
  const double p_hit = 1.0 - analytics::survival_probability_given_quality(q, prior, cost);
  if (u >= p_hit) return kInf;

  // Invert the hitting CDF in the scale-free variable s = t * tau, so that
  // rescaling tau rescales the sampled time exactly.
  auto hit_cdf = [&](double s) {
    return 1.0 - analytics::finite_time_survival_scaled(q, s, prior, cost);
  };
  double s_lo = 0.0;
  double s_hi = 1.0;
  while (hit_cdf(s_hi) < u) {
    s_lo = s_hi;
    s_hi *= 2.0;
    if (s_hi > 1e40) return kInf;  // u within one ulp of p_hit
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (s_lo + s_hi);
    if (mid <= s_lo || mid >= s_hi) break;
    (hit_cdf(mid) < u ? s_lo : s_hi) = mid;
    if (s_hi - s_lo <= 1e-10 * s_hi) break;
  }
  return 0.5 * (s_lo + s_hi) / prior.tau;
}

namespace {

enum class State { kWaiting, kActive, kDowntime, kOut };

}  // namespace

Timeline simulate_timeline(const NetworkConstraint& constraint,
                           const Eigen::VectorXd& entry_times, const BudgetSource& budgets,
                           int max_attempts, double downtime) {
  const int n = constraint.n;
  const auto neighbors = constraint.neighbor_lists();

  Timeline tl;
  tl.actual = Eigen::VectorXd::Constant(n, kInf);
  tl.survive_start = Eigen::VectorXd::Constant(n, kInf);
  tl.active.assign(n, {});
  tl.attempts = Eigen::VectorXi::Zero(n);

  std::vector<State> state(n);
  std::vector<double> budget(n, kInf);
  std::vector<double> ready(n, kInf);  // re-entry time while in downtime
  std::vector<int> attempt(n, -1);

  double now = 0.0;

  auto begin_stint = [&](int i) {
    state[i] = State::kActive;
    ++attempt[i];
    tl.attempts(i) = attempt[i] + 1;
    budget[i] = budgets(i, attempt[i]);
    if (!(budget[i] > 0.0)) throw std::runtime_error("hitting-time budget must be positive");
    tl.active[i].push_back({now, kInf});
    if (budget[i] == kInf) tl.survive_start(i) = now;
  };

  for (int i = 0; i < n; ++i) {
    state[i] = entry_times(i) > 0.0 ? State::kWaiting : State::kActive;
    if (state[i] == State::kActive) begin_stint(i);
  }

  std::vector<double> rate(n, 0.0);
  while (true) {
    // consumption rates of active agents
    for (int i = 0; i < n; ++i) {
      if (state[i] != State::kActive) continue;
      int links = 0;
      bool pending_neighbor = false;
      for (int j : neighbors[i]) {
        if (state[j] == State::kActive) ++links;
        if (state[j] == State::kWaiting) pending_neighbor = true;
      }
      rate[i] = links > 0 ? links : (pending_neighbor ? 0.0 : 1.0);
    }

    double t_next = kInf;
    for (int i = 0; i < n; ++i) {
      switch (state[i]) {
        case State::kWaiting:
          t_next = std::min(t_next, entry_times(i));
          break;
        case State::kDowntime:
          t_next = std::min(t_next, ready[i]);
          break;
        case State::kActive:
          if (budget[i] < kInf && rate[i] > 0.0)
            t_next = std::min(t_next, now + budget[i] / rate[i]);
          break;
        case State::kOut:
          break;
      }
    }
    if (t_next == kInf) break;

    const double tol = 1e-12 * (1.0 + std::abs(t_next));
    const double dt = t_next - now;
    now = t_next;

    // drain budgets; agents exhausting within the tie tolerance are
    // ostracized together before any rate update
    for (int i = 0; i < n; ++i) {
      if (state[i] != State::kActive || budget[i] == kInf || rate[i] <= 0.0) continue;
      if ((now - dt) + budget[i] / rate[i] <= now + tol) {
        budget[i] = 0.0;
        tl.active[i].back().end = now;
        if (attempt[i] + 1 < max_attempts) {
          state[i] = State::kDowntime;
          ready[i] = now + downtime;
        } else {
          state[i] = State::kOut;
          tl.actual(i) = now;
        }
      } else {
        budget[i] -= rate[i] * dt;
      }
    }

    for (int i = 0; i < n; ++i) {
      if (state[i] == State::kWaiting && entry_times(i) <= now + tol) begin_stint(i);
      else if (state[i] == State::kDowntime && ready[i] <= now + tol) begin_stint(i);
    }
  }

  return tl;
}

HittingRealization map_hitting_times(const HittingRealization& unscaled,
                                     const NetworkConstraint& constraint,
                                     const Eigen::VectorXd& entry_times) {
  if (unscaled.kind != HittingRealization::Kind::kUnscaled)
    throw std::invalid_argument("map_hitting_times expects unscaled hitting times");
  if (unscaled.times.size() != constraint.n || entry_times.size() != constraint.n)
    throw std::invalid_argument("hitting-time vector length does not match constraint.n");

  const Timeline tl = simulate_timeline(
      constraint, entry_times, [&](int agent, int) { return unscaled.times(agent); },
      /*max_attempts=*/1, /*downtime=*/0.0);
  return HittingRealization{tl.actual, HittingRealization::Kind::kActual};
}

RealizationDraw sample_realization(const RunConfig& config, std::uint64_t replication) {
  const int n = config.constraint.n;
  const double threshold = config.extension.severance_threshold(config.econ.cost);
  const int max_attempts = config.extension.attempts();
  const double downtime =
      config.extension.variant == ExtensionVariant::kReentry ? config.extension.downtime : 0.0;

  Eigen::VectorXd entry_times = Eigen::VectorXd::Zero(n);
  if (config.extension.variant == ExtensionVariant::kEntry)
    for (int i = 0; i < n; ++i) entry_times(i) = config.priors[i].entry_time;

  RealizationDraw draw;
  draw.qualities.resize(n);
  draw.unscaled.resize(n);

  auto budgets = [&](int agent, int attempt) {
    CounterRng rng(config.mc.seed, replication, static_cast<std::uint64_t>(agent),
                   static_cast<std::uint64_t>(attempt));
    const double q = sample_quality(config.priors[agent], rng);
    const double t = sample_unscaled_hitting_time(q, config.priors[agent], threshold, rng);
    draw.qualities(agent) = q;
    if (attempt == 0) draw.unscaled(agent) = t;
    return t;
  };

  draw.timeline =
      simulate_timeline(config.constraint, entry_times, budgets, max_attempts, downtime);
  return draw;
}

}  // namespace repnet::hitting
