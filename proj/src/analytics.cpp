#include "repnet/analytics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "repnet/normal.hpp"
#include "repnet/quadrature.hpp"

namespace repnet::analytics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_mu_above_cost(const AgentPrior& prior, double cost) {
  if (!(prior.mu > cost)) throw std::domain_error("mu must exceed cost");
}

}  // namespace

double survival_probability(const AgentPrior& prior, double cost) {
  require_mu_above_cost(prior, cost);
  const double sigma = std::sqrt(prior.sigma2);
  return 2.0 * norm_cdf((prior.mu - cost) / sigma) - 1.0;
}

double survival_probability_quadrature(const AgentPrior& prior, double cost) {
  require_mu_above_cost(prior, cost);
  const double mu = prior.mu;
  const double sigma = std::sqrt(prior.sigma2);
  const double a = 2.0 * (mu - cost) / prior.sigma2;
  auto integrand = [&](double q) {
    return (1.0 - std::exp(-a * (q - cost))) * norm_pdf((q - mu) / sigma) / sigma;
  };
  const double lo = std::max(cost, mu - 10.0 * sigma);
  const double hi = mu + 10.0 * sigma;
  if (lo >= hi) return 0.0;
  return integrate(integrand, lo, hi, 1e-10);
}

double survival_probability_given_quality(double q, const AgentPrior& prior, double cost) {
  require_mu_above_cost(prior, cost);
  if (q <= cost) return 0.0;
  return -std::expm1(-2.0 / prior.sigma2 * (prior.mu - cost) * (q - cost));
}

double finite_time_survival_scaled(double q, double s, const AgentPrior& prior, double cost) {
  require_mu_above_cost(prior, cost);
  if (s <= 0.0) return 1.0;
  if (s == kInf) return survival_probability_given_quality(q, prior, cost);
  const double root = std::sqrt(s);
  const double drift = prior.mu - cost;
  const double a = drift / prior.sigma2;
  const double b1 = root * (q - cost) + a / root;
  const double b2 = root * (q - cost) - a / root;
  // second term in log space: the exponent can be large positive when q << c
  // while Phi(b2) underflows
  const double log_term = -2.0 * a * (q - cost) + log_norm_cdf(b2);
  const double term = log_term < -745.0 ? 0.0 : std::exp(log_term);
  const double p = norm_cdf(b1) - term;
  return std::clamp(p, 0.0, 1.0);
}

double finite_time_survival(double q, double t, const AgentPrior& prior, double cost) {
  if (!(t >= 0.0)) throw std::domain_error("t must be non-negative");
  return finite_time_survival_scaled(q, t * prior.tau, prior, cost);
}

double hitting_time_pdf(double t, const AgentPrior& prior, double cost) {
  require_mu_above_cost(prior, cost);
  if (!(t > 0.0)) throw std::domain_error("t must be positive");
  const double mu = prior.mu;
  const double sigma = std::sqrt(prior.sigma2);
  const double tau = prior.tau;
  const double a = (mu - cost) / prior.sigma2;
  const double scale = (mu - cost) / (prior.sigma2 * std::sqrt(tau)) * std::pow(t, -1.5);
  const double root = std::sqrt(t * tau);
  auto integrand = [&](double q) {
    return scale * norm_pdf(root * (q - cost) + a / root) * norm_pdf((q - mu) / sigma) / sigma;
  };
  // the integrand is a product of two bells: the prior around mu (width
  // sigma) and the conditional factor around q* = c - a/(t*tau) (width
  // 1/root). Either can be a narrow spike inside the other's support, so
  // integrate piecewise with panel edges at both bulks; otherwise the
  // adaptive rule can step over the spike entirely.
  const double qstar = cost - a / (t * tau);
  std::array<double, 4> edges = {mu - 12.0 * sigma, mu + 12.0 * sigma, qstar - 12.0 / root,
                                 qstar + 12.0 / root};
  std::sort(edges.begin(), edges.end());
  double total = 0.0;
  for (int k = 0; k + 1 < 4; ++k)
    if (edges[k + 1] > edges[k]) total += integrate(integrand, edges[k], edges[k + 1], 1e-12);
  return total;
}

double hitting_time_cdf(double t, const AgentPrior& prior, double cost) {
  require_mu_above_cost(prior, cost);
  if (t <= 0.0) return 0.0;
  const double mu = prior.mu;
  const double sigma = std::sqrt(prior.sigma2);
  auto integrand = [&](double q) {
    return (1.0 - finite_time_survival(q, t, prior, cost)) * norm_pdf((q - mu) / sigma) / sigma;
  };
  return integrate(integrand, mu - 10.0 * sigma, mu + 10.0 * sigma, 1e-10);
}

double residual_hitting_mass(double t, const AgentPrior& prior, double cost) {
  require_mu_above_cost(prior, cost);
  const double mu = prior.mu;
  const double sigma = std::sqrt(prior.sigma2);
  auto integrand = [&](double q) {
    const double gap = finite_time_survival(q, t, prior, cost) -
                       survival_probability_given_quality(q, prior, cost);
    return gap * norm_pdf((q - mu) / sigma) / sigma;
  };
  return integrate(integrand, mu - 10.0 * sigma, mu + 10.0 * sigma, 1e-10);
}

double horizon_for_residual_mass(const std::vector<AgentPrior>& priors, double cost,
                                 double mass) {
  double horizon = 1.0;
  for (const AgentPrior& p : priors) {
    double t = horizon;
    while (residual_hitting_mass(t, p, cost) >= mass && t < 1e12) t *= 2.0;
    horizon = std::max(horizon, t);
  }
  return horizon;
}

double conditional_mean_given_survival(const AgentPrior& prior, double cost) {
  const double p = survival_probability(prior, cost);
  return (prior.mu - (1.0 - p) * cost) / p;
}

double reentry_survival_probability(const AgentPrior& prior, double cost, int attempts) {
  if (attempts < 1) throw std::domain_error("attempts must be at least 1");
  const double p = survival_probability(prior, cost);
  return 1.0 - std::pow(1.0 - p, attempts);
}

StableNetworkDistribution enumerate_stable_networks(const NetworkConstraint& constraint,
                                                    const std::vector<AgentPrior>& priors,
                                                    double cost, int attempts, int cap) {
  const int n = constraint.n;
  if (static_cast<int>(priors.size()) != n)
    throw std::invalid_argument("priors length does not match constraint.n");
  if (n > cap)
    throw std::invalid_argument(
        "enumeration over 2^" + std::to_string(n) +
        " realizations exceeds the cap; estimate the distribution by Monte Carlo instead");

  std::vector<double> p_include(n);
  for (int i = 0; i < n; ++i)
    p_include[i] = reentry_survival_probability(priors[i], cost, attempts);

  std::map<std::vector<std::pair<int, int>>, double> merged;
  const std::uint64_t total = n == 0 ? 1 : (std::uint64_t{1} << n);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    double prob = 1.0;
    for (int i = 0; i < n; ++i)
      prob *= (mask >> i) & 1 ? p_include[i] : 1.0 - p_include[i];
    std::vector<std::pair<int, int>> induced;
    for (const auto& [i, j] : constraint.edges)
      if (((mask >> i) & 1) && ((mask >> j) & 1)) induced.emplace_back(i, j);
    merged[std::move(induced)] += prob;
  }

  StableNetworkDistribution dist;
  dist.entries.reserve(merged.size());
  for (auto& [edges, prob] : merged) dist.entries.push_back({edges, prob});
  return dist;
}

}  // namespace repnet::analytics
