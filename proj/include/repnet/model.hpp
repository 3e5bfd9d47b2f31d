#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace repnet {

/// Raised when a run configuration violates a model invariant. The message
/// names the offending agent index / field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exogenous parameters of one agent.
struct AgentPrior {
  double mu = 0.0;          ///< prior mean quality
  double sigma2 = 1.0;      ///< prior variance, > 0
  double tau = 1.0;         ///< signal precision, > 0
  double entry_time = 0.0;  ///< entry time, >= 0 (0 = incumbent)
};

/// Symmetric linking permission structure over n agents, stored as a set of
/// canonical (i < j) unordered pairs.
struct NetworkConstraint {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  /// Adjacency lists derived from the edge set.
  std::vector<std::vector<int>> neighbor_lists() const;
  bool has_edge(int i, int j) const;
};

/// Builds the canonical constraint. Throws ConfigError on self-loops,
/// out-of-range indices, or duplicate (possibly reversed) pairs.
NetworkConstraint make_constraint(int n, std::vector<std::pair<int, int>> edges);

NetworkConstraint complete_network(int n);
NetworkConstraint star_network(int n);    // agent 0 is the center
NetworkConstraint ring_network(int n);
NetworkConstraint empty_network(int n);

struct EconomyParams {
  double cost = 0.0;  ///< flow linking cost c
  double rho = 1.0;   ///< designer discount rate, > 0
};

enum class ExtensionVariant { kNone, kSubsidy, kLinkFormation, kEntry, kReentry };

/// Which model variant is active and its parameters. Exactly one variant per
/// run; `none` coincides with subsidy(0), reentry(R=1), and entry with all
/// entry times zero.
struct ExtensionConfig {
  ExtensionVariant variant = ExtensionVariant::kNone;
  double delta = 0.0;      ///< linking subsidy (subsidy variant)
  double gamma = 0.0;      ///< link formation threshold premium (link_formation)
  int max_attempts = 1;    ///< R: total entry attempts (reentry variant)
  double downtime = 0.0;   ///< L: wait between ostracism and re-entry (reentry)

  /// Reputation threshold at which links are severed: c, or c - delta under a
  /// subsidy.
  double severance_threshold(double cost) const {
    return variant == ExtensionVariant::kSubsidy ? cost - delta : cost;
  }
  int attempts() const {
    return variant == ExtensionVariant::kReentry ? max_attempts : 1;
  }
};

enum class EngineKind { kAnalytic, kPath };

struct McConfig {
  int replications = 1;
  std::uint64_t seed = 0;
  EngineKind engine = EngineKind::kAnalytic;
  double dt = 1e-3;       ///< path engine step
  double horizon = 0.0;   ///< path engine horizon; 0 = derive from residual hitting mass
};

struct RunConfig {
  std::vector<AgentPrior> priors;
  NetworkConstraint constraint;
  EconomyParams econ;
  ExtensionConfig extension;
  McConfig mc;
};

/// Checks every type invariant and returns the config unchanged. Throws
/// ConfigError describing the first violation. Idempotent.
RunConfig validate(const RunConfig& config);

/// Parses a RunConfig from a JSON document / file (field names mirror the
/// struct members in snake_case). Parse and invariant failures both surface
/// as ConfigError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

}  // namespace repnet
