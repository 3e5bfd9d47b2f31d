#include "repnet/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace repnet {

using nlohmann::json;

std::vector<std::vector<int>> NetworkConstraint::neighbor_lists() const {
  std::vector<std::vector<int>> nb(n);
  for (const auto& [i, j] : edges) {
    nb[i].push_back(j);
    nb[j].push_back(i);
  }
  for (auto& v : nb) std::sort(v.begin(), v.end());
  return nb;
}

bool NetworkConstraint::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

NetworkConstraint make_constraint(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 0) throw ConfigError("constraint.n must be non-negative");
  for (auto& [i, j] : edges) {
    if (i == j) throw ConfigError("edge (" + std::to_string(i) + "," + std::to_string(j) +
                                  "): self-loops are not allowed");
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw ConfigError("edge (" + std::to_string(i) + "," + std::to_string(j) +
                        "): agent index out of range [0," + std::to_string(n) + ")");
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (edges[k] == edges[k - 1])
      throw ConfigError("edge (" + std::to_string(edges[k].first) + "," +
                        std::to_string(edges[k].second) +
                        "): duplicate or asymmetric edge entry");
  }
  return NetworkConstraint{n, std::move(edges)};
}

NetworkConstraint complete_network(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return make_constraint(n, std::move(e));
}

NetworkConstraint star_network(int n) {
  std::vector<std::pair<int, int>> e;
  for (int j = 1; j < n; ++j) e.emplace_back(0, j);
  return make_constraint(n, std::move(e));
}

NetworkConstraint ring_network(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return make_constraint(n, std::move(e));
}

NetworkConstraint empty_network(int n) { return make_constraint(n, {}); }

namespace {

void require_finite(double x, const std::string& what) {
  if (!std::isfinite(x)) throw ConfigError(what + " must be finite");
}

}  // namespace

RunConfig validate(const RunConfig& config) {
  const int n = config.constraint.n;
  if (static_cast<int>(config.priors.size()) != n)
    throw ConfigError("priors length " + std::to_string(config.priors.size()) +
                      " does not match constraint.n = " + std::to_string(n));

  // re-canonicalize the edge set so symmetry/self-loop/range checks apply
  make_constraint(n, config.constraint.edges);

  require_finite(config.econ.cost, "econ.cost");
  require_finite(config.econ.rho, "econ.rho");
  if (!(config.econ.rho > 0)) throw ConfigError("econ.rho must be positive");

  for (int i = 0; i < n; ++i) {
    const AgentPrior& p = config.priors[i];
    const std::string who = "agent " + std::to_string(i);
    require_finite(p.mu, who + ": mu");
    require_finite(p.sigma2, who + ": sigma2");
    require_finite(p.tau, who + ": tau");
    require_finite(p.entry_time, who + ": entry_time");
    if (!(p.sigma2 > 0)) throw ConfigError(who + ": sigma2 must be positive");
    if (!(p.tau > 0)) throw ConfigError(who + ": tau must be positive");
    if (!(p.entry_time >= 0)) throw ConfigError(who + ": entry_time must be non-negative");
    if (!(p.mu > config.econ.cost)) throw ConfigError(who + ": mu must exceed cost");
    if (p.entry_time > 0 && config.extension.variant != ExtensionVariant::kEntry)
      throw ConfigError(who + ": entry_time > 0 requires the entry variant");
  }

  const ExtensionConfig& ext = config.extension;
  switch (ext.variant) {
    case ExtensionVariant::kNone:
      break;
    case ExtensionVariant::kSubsidy:
      require_finite(ext.delta, "extension.delta");
      if (!(ext.delta >= 0)) throw ConfigError("extension.delta must be non-negative");
      break;
    case ExtensionVariant::kLinkFormation:
      require_finite(ext.gamma, "extension.gamma");
      if (!(ext.gamma >= 0)) throw ConfigError("extension.gamma must be non-negative");
      break;
    case ExtensionVariant::kEntry:
      break;
    case ExtensionVariant::kReentry:
      if (ext.max_attempts < 1) throw ConfigError("extension.R must be at least 1");
      require_finite(ext.downtime, "extension.L");
      if (!(ext.downtime >= 0)) throw ConfigError("extension.L must be non-negative");
      break;
  }

  if (config.mc.replications < 1) throw ConfigError("mc.replications must be at least 1");
  if (config.mc.engine == EngineKind::kPath) {
    if (!(config.mc.dt > 0)) throw ConfigError("mc.engine.dt must be positive");
    if (config.mc.horizon != 0.0 && !(config.mc.dt < config.mc.horizon))
      throw ConfigError("mc.engine.dt must be smaller than mc.engine.horizon");
  }

  return config;
}

namespace {

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ConfigError("config is not valid JSON");
  return j;
}

double get_num(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError(ctx + "." + key + " missing or not a number");
  return j[key].get<double>();
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  const json j = parse_json(json_text);
  RunConfig cfg;

  if (!j.contains("priors") || !j["priors"].is_array())
    throw ConfigError("priors missing or not an array");
  int idx = 0;
  for (const auto& pj : j["priors"]) {
    const std::string ctx = "priors[" + std::to_string(idx++) + "]";
    AgentPrior p;
    p.mu = get_num(pj, "mu", ctx);
    p.sigma2 = get_num(pj, "sigma2", ctx);
    p.tau = get_num(pj, "tau", ctx);
    p.entry_time = pj.contains("entry_time") ? get_num(pj, "entry_time", ctx) : 0.0;
    cfg.priors.push_back(p);
  }

  if (!j.contains("constraint")) throw ConfigError("constraint missing");
  const json& cj = j["constraint"];
  const int n = static_cast<int>(get_num(cj, "n", "constraint"));
  std::vector<std::pair<int, int>> edges;
  if (cj.contains("edges")) {
    for (const auto& ej : cj["edges"]) {
      if (!ej.is_array() || ej.size() != 2 || !ej[0].is_number_integer() ||
          !ej[1].is_number_integer())
        throw ConfigError("constraint.edges entries must be [i, j] integer pairs");
      edges.emplace_back(ej[0].get<int>(), ej[1].get<int>());
    }
  }
  cfg.constraint = make_constraint(n, std::move(edges));

  if (!j.contains("econ")) throw ConfigError("econ missing");
  cfg.econ.cost = get_num(j["econ"], "cost", "econ");
  cfg.econ.rho = get_num(j["econ"], "rho", "econ");

  if (j.contains("extension")) {
    const json& xj = j["extension"];
    const std::string variant = xj.value("variant", std::string("none"));
    if (variant == "none") {
      cfg.extension.variant = ExtensionVariant::kNone;
    } else if (variant == "subsidy") {
      cfg.extension.variant = ExtensionVariant::kSubsidy;
      cfg.extension.delta = get_num(xj, "delta", "extension");
    } else if (variant == "link_formation") {
      cfg.extension.variant = ExtensionVariant::kLinkFormation;
      cfg.extension.gamma = get_num(xj, "gamma", "extension");
    } else if (variant == "entry") {
      cfg.extension.variant = ExtensionVariant::kEntry;
    } else if (variant == "reentry") {
      cfg.extension.variant = ExtensionVariant::kReentry;
      cfg.extension.max_attempts = static_cast<int>(get_num(xj, "R", "extension"));
      cfg.extension.downtime = get_num(xj, "L", "extension");
    } else {
      throw ConfigError("extension.variant '" + variant + "' is not recognized");
    }
  }

  if (j.contains("mc")) {
    const json& mj = j["mc"];
    cfg.mc.replications = static_cast<int>(mj.value("replications", 1.0));
    cfg.mc.seed = mj.value("seed", std::uint64_t{0});
    if (mj.contains("engine")) {
      const json& ej = mj["engine"];
      const std::string kind = ej.value("type", std::string("analytic"));
      if (kind == "analytic") {
        cfg.mc.engine = EngineKind::kAnalytic;
      } else if (kind == "path") {
        cfg.mc.engine = EngineKind::kPath;
        cfg.mc.dt = get_num(ej, "dt", "mc.engine");
        cfg.mc.horizon = ej.contains("horizon") ? get_num(ej, "horizon", "mc.engine") : 0.0;
      } else {
        throw ConfigError("mc.engine.type '" + kind + "' is not recognized");
      }
    }
  }

  return validate(cfg);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace repnet
