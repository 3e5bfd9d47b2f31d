#include "repnet/pathsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "repnet/analytics.hpp"
#include "repnet/normal.hpp"

namespace repnet::pathsim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PathEngine::PathEngine(const RunConfig& config, std::uint64_t replication)
    : config_(config),
      replication_(replication),
      threshold_(config.extension.severance_threshold(config.econ.cost)) {
  const int n = config_.constraint.n;
  omega_ = config_.constraint.neighbor_lists();

  state_.quality = Eigen::VectorXd::Zero(n);
  state_.info_time = Eigen::VectorXd::Zero(n);
  state_.signal_sum = Eigen::VectorXd::Zero(n);
  state_.posterior_prec = Eigen::VectorXd::Zero(n);
  state_.status.assign(n, PathState::Status::kWaiting);
  state_.ready_time = Eigen::VectorXd::Constant(n, kInf);
  state_.attempt = Eigen::VectorXi::Constant(n, -1);
  state_.linked.assign(n, std::vector<char>(n, 0));

  stint_begin_ = Eigen::VectorXd::Constant(n, kInf);
  exit_time_ = Eigen::VectorXd::Constant(n, kInf);
  open_begin_.assign(n, std::vector<double>(n, -1.0));
  streams_.reserve(n);
  for (int i = 0; i < n; ++i) streams_.emplace_back(config_.mc.seed, replication_, i, 0);

  const bool entry = config_.extension.variant == ExtensionVariant::kEntry;
  for (int i = 0; i < n; ++i) {
    const double e = entry ? config_.priors[i].entry_time : 0.0;
    if (e <= 0.0) begin_stint(i, /*log_event=*/false);
  }
  maybe_form_links();  // pairs whose prior means already clear c + gamma
}

double PathEngine::consumption_rate(int i) const {
  int links = 0;
  bool pending = false;
  for (int j = 0; j < config_.constraint.n; ++j)
    if (state_.linked[i][j]) ++links;
  for (int j : omega_[i])
    if (state_.status[j] == PathState::Status::kWaiting) pending = true;
  return links > 0 ? static_cast<double>(links) : (pending ? 0.0 : 1.0);
}

void PathEngine::begin_stint(int i, bool log_event) {
  state_.status[i] = PathState::Status::kActive;
  state_.attempt(i) += 1;
  stint_begin_(i) = state_.time;
  streams_[i] = CounterRng(config_.mc.seed, replication_, static_cast<std::uint64_t>(i),
                           static_cast<std::uint64_t>(state_.attempt(i)));

  const AgentPrior& prior = config_.priors[i];
  state_.quality(i) = prior.mu + std::sqrt(prior.sigma2) * norm_quantile(streams_[i].uniform());
  state_.info_time(i) = 0.0;
  state_.signal_sum(i) = 0.0;
  state_.posterior_prec(i) = 1.0 / prior.sigma2;

  if (log_event)
    events_.push_back({state_.time,
                       state_.attempt(i) > 0 ? PathEvent::Type::kReenter : PathEvent::Type::kEnter,
                       i, -1});

  for (int j : omega_[i]) {
    if (state_.status[j] != PathState::Status::kActive) continue;
    state_.linked[i][j] = state_.linked[j][i] = 1;
    open_begin_[std::min(i, j)][std::max(i, j)] = state_.time;
  }
}

void PathEngine::ostracize(int i) {
  events_.push_back({state_.time, PathEvent::Type::kOstracize, i, -1});
  for (int j = 0; j < config_.constraint.n; ++j) {
    if (!state_.linked[i][j]) continue;
    state_.linked[i][j] = state_.linked[j][i] = 0;
    const int a = std::min(i, j), b = std::max(i, j);
    episodes_.push_back(
        {a, b, open_begin_[a][b], state_.time, state_.quality(a), state_.quality(b)});
    open_begin_[a][b] = -1.0;
    events_.push_back({state_.time, PathEvent::Type::kSever, a, b});
  }
  exit_time_(i) = state_.time;
  if (state_.attempt(i) + 1 < config_.extension.attempts()) {
    state_.status[i] = PathState::Status::kDowntime;
    state_.ready_time(i) = state_.time + config_.extension.downtime;
  } else {
    state_.status[i] = PathState::Status::kOut;
  }
}

void PathEngine::process_arrivals() {
  const bool entry = config_.extension.variant == ExtensionVariant::kEntry;
  const double tol = 1e-9 * (1.0 + std::abs(state_.time));
  for (int i = 0; i < config_.constraint.n; ++i) {
    if (state_.status[i] == PathState::Status::kWaiting) {
      const double e = entry ? config_.priors[i].entry_time : 0.0;
      if (e <= state_.time + tol) begin_stint(i, /*log_event=*/true);
    } else if (state_.status[i] == PathState::Status::kDowntime &&
               state_.ready_time(i) <= state_.time + tol) {
      begin_stint(i, /*log_event=*/true);
    }
  }
}

void PathEngine::step(double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const int n = config_.constraint.n;
  process_arrivals();

  // Euler-Maruyama on the sufficient statistic of each agent's signal
  for (int i = 0; i < n; ++i) {
    if (state_.status[i] != PathState::Status::kActive) continue;
    const double r = consumption_rate(i);
    if (r <= 0.0) continue;
    const double tau = config_.priors[i].tau;
    const double dI = r * dt;
    state_.signal_sum(i) +=
        state_.quality(i) * tau * dI + std::sqrt(tau * dI) * streams_[i].normal();
    state_.info_time(i) += dI;
    state_.posterior_prec(i) += tau * dI;
  }
  state_.time += dt;

  // batch severance: everyone below the threshold at this grid point leaves
  // together, then links and rates are recomputed
  std::vector<int> leaving;
  for (int i = 0; i < n; ++i) {
    if (state_.status[i] != PathState::Status::kActive) continue;
    if (state_.posterior_mean(config_.priors[i], i) < threshold_) leaving.push_back(i);
  }
  for (int i : leaving) ostracize(i);
  maybe_form_links();
}

void PathEngine::maybe_form_links() {
  if (config_.extension.variant != ExtensionVariant::kLinkFormation) return;
  const int n = config_.constraint.n;
  const double bar = config_.econ.cost + config_.extension.gamma;
  for (int a = 0; a < n; ++a) {
    if (state_.status[a] != PathState::Status::kActive) continue;
    if (state_.posterior_mean(config_.priors[a], a) < bar) continue;
    for (int b = a + 1; b < n; ++b) {
      if (state_.linked[a][b] || config_.constraint.has_edge(a, b)) continue;
      if (state_.status[b] != PathState::Status::kActive) continue;
      if (state_.posterior_mean(config_.priors[b], b) < bar) continue;
      state_.linked[a][b] = state_.linked[b][a] = 1;
      open_begin_[a][b] = state_.time;
      events_.push_back({state_.time, PathEvent::Type::kForm, a, b});
    }
  }
}

PathResult PathEngine::finish(const EconomyParams& econ) {
  const int n = config_.constraint.n;
  PathResult res;
  res.horizon = state_.time;
  res.actual = Eigen::VectorXd::Constant(n, kInf);
  res.survive_start = Eigen::VectorXd::Constant(n, kInf);
  res.qualities = state_.quality;
  res.attempts = state_.attempt.array() + 1;
  res.events = std::move(events_);
  res.welfare_per_agent = Eigen::VectorXd::Zero(n);

  // agents still present at the horizon are classified as surviving; agents
  // in downtime are truncated at their last ostracism time
  for (int i = 0; i < n; ++i) {
    switch (state_.status[i]) {
      case PathState::Status::kActive:
        res.survive_start(i) = stint_begin_(i);
        break;
      case PathState::Status::kDowntime:
      case PathState::Status::kOut:
        res.actual(i) = exit_time_(i);
        break;
      case PathState::Status::kWaiting:
        res.attempts(i) = 0;
        break;
    }
  }

  res.episodes = std::move(episodes_);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (open_begin_[a][b] >= 0.0)
        res.episodes.push_back(
            {a, b, open_begin_[a][b], kInf, state_.quality(a), state_.quality(b)});

  const double rho = econ.rho;
  for (const LinkEpisode& ep : res.episodes) {
    const double disc =
        (std::exp(-rho * ep.begin) - (ep.end == kInf ? 0.0 : std::exp(-rho * ep.end))) / rho;
    res.welfare_per_agent(ep.i) += (ep.quality_j - econ.cost) * disc;
    res.welfare_per_agent(ep.j) += (ep.quality_i - econ.cost) * disc;
  }
  res.welfare_total = res.welfare_per_agent.sum();
  return res;
}

double default_horizon(const RunConfig& config) {
  const double threshold = config.extension.severance_threshold(config.econ.cost);
  double t = analytics::horizon_for_residual_mass(config.priors, threshold, 0.01);
  if (config.extension.variant == ExtensionVariant::kEntry) {
    double max_entry = 0.0;
    for (const AgentPrior& p : config.priors) max_entry = std::max(max_entry, p.entry_time);
    t += max_entry;
  } else if (config.extension.variant == ExtensionVariant::kReentry) {
    const int r = config.extension.attempts();
    t = t * r + config.extension.downtime * (r - 1);
  }
  return t;
}

PathResult run_path(const RunConfig& config, std::uint64_t replication) {
  const double dt = config.mc.dt;
  const double horizon = config.mc.horizon > 0.0 ? config.mc.horizon : default_horizon(config);
  PathEngine engine(config, replication);
  const long steps = static_cast<long>(std::ceil(horizon / dt));
  for (long k = 0; k < steps; ++k) engine.step(dt);
  return engine.finish(config.econ);
}

}  // namespace repnet::pathsim
