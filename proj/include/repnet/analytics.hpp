#pragma once

#include <utility>
#include <vector>

#include "repnet/model.hpp"

namespace repnet::analytics {

/// Exact probability distribution over the networks that can persist as
/// t -> infinity, given independent per-agent inclusion probabilities.
struct StableNetworkDistribution {
  struct Entry {
    std::vector<std::pair<int, int>> edges;  // canonical, lexicographic
    double probability;
  };
  std::vector<Entry> entries;  // sorted lexicographically by edge set
};

/// P(S_i): probability the agent's reputation never hits `cost`. Closed form
/// 2*Phi((mu - c)/sigma) - 1. Requires mu > cost.
double survival_probability(const AgentPrior& prior, double cost);

/// Same quantity via adaptive quadrature of the integral over the true
/// quality. Retained as an independent cross-check of the closed form.
double survival_probability_quadrature(const AgentPrior& prior, double cost);

/// P(S_i | q): 1 - exp(-(2/sigma^2)(mu - c)(q - c)) for q > c, else 0.
double survival_probability_given_quality(double q, const AgentPrior& prior, double cost);

/// P(reputation has not hit `cost` by time t | true quality q). Depends on
/// tau only through the product t * tau.
double finite_time_survival(double q, double t, const AgentPrior& prior, double cost);

/// Same, parameterized by the scale-free variable s = t * tau.
double finite_time_survival_scaled(double q, double s, const AgentPrior& prior, double cost);

/// Unconditional density of a finite base-precision hitting time at t
/// (integrates the conditional density over the prior on q).
double hitting_time_pdf(double t, const AgentPrior& prior, double cost);

/// P(hitting time <= t), unconditional; complements survival_probability:
/// cdf(inf) = 1 - P(S_i).
double hitting_time_cdf(double t, const AgentPrior& prior, double cost);

/// Probability that a finite hitting time lands beyond t:
/// (1 - P(S_i)) - cdf(t). Used to size path-engine horizons.
double residual_hitting_mass(double t, const AgentPrior& prior, double cost);

/// Smallest horizon (by doubling) at which residual_hitting_mass < mass for
/// every agent.
double horizon_for_residual_mass(const std::vector<AgentPrior>& priors, double cost,
                                 double mass);

/// E[q | never ostracized] = (mu - (1 - P)c) / P.
double conditional_mean_given_survival(const AgentPrior& prior, double cost);

/// Inclusion probability with up to R independent entry attempts:
/// 1 - (1 - P(S_i))^R.
double reentry_survival_probability(const AgentPrior& prior, double cost, int attempts);

/// Enumerates all 2^N inclusion/exclusion realizations, maps each to the
/// induced network g_ij = I{S_i} I{S_j} I{omega_ij}, and merges realizations
/// that induce the same edge set. `attempts` > 1 substitutes the re-entry
/// inclusion probabilities. Refuses N above `cap` (use Monte Carlo instead).
StableNetworkDistribution enumerate_stable_networks(const NetworkConstraint& constraint,
                                                    const std::vector<AgentPrior>& priors,
                                                    double cost, int attempts = 1,
                                                    int cap = 20);

}  // namespace repnet::analytics
