// Command-line front end: reads a JSON run configuration, dispatches to the
// library, and writes plot-ready CSV files. Every command is a deterministic
// function of (config file, flag overrides); thread count never changes the
// output bytes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "repnet/analytics.hpp"
#include "repnet/csv.hpp"
#include "repnet/hitting.hpp"
#include "repnet/model.hpp"
#include "repnet/pathsim.hpp"
#include "repnet/welfare.hpp"

namespace {

using nlohmann::json;
using repnet::ConfigError;
using repnet::RunConfig;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int replications = 0;  // 0 = keep config value
  std::string engine;    // empty = keep config value
  int threads = 1;
  bool per_agent = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_out) {
  cmd->add_option("--config", args.config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  auto* out = cmd->add_option("--out", args.out_path, "output CSV path");
  if (needs_out) out->required();
  cmd->add_option("--seed", args.seed, "override mc.seed")->each([&](const std::string&) {
    args.seed_set = true;
  });
  cmd->add_option("--replications", args.replications, "override mc.replications")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--engine", args.engine, "override engine")
      ->check(CLI::IsMember({"analytic", "path"}));
  cmd->add_option("--threads", args.threads, "worker pool size")->check(CLI::PositiveNumber);
  cmd->add_flag("--per-agent", args.per_agent, "emit per-agent rows as well");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Loads the run config and applies flag overrides.
RunConfig load(const CommonArgs& args) {
  RunConfig cfg = repnet::parse_config(read_file(args.config_path));
  if (args.seed_set) cfg.mc.seed = args.seed;
  if (args.replications > 0) cfg.mc.replications = args.replications;
  if (args.engine == "analytic") cfg.mc.engine = repnet::EngineKind::kAnalytic;
  if (args.engine == "path") cfg.mc.engine = repnet::EngineKind::kPath;
  return repnet::validate(cfg);
}

/// Extra command-specific JSON section (sweep grids etc.).
json load_section(const CommonArgs& args, const std::string& key) {
  json j = json::parse(read_file(args.config_path), nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ConfigError("config is not valid JSON");
  if (!j.contains(key)) throw ConfigError("config section '" + key + "' missing");
  return j[key];
}

std::vector<double> number_list(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key) || !j[key].is_array() || j[key].empty())
    throw ConfigError(ctx + "." + key + " must be a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) throw ConfigError(ctx + "." + key + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

double number_field(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError(ctx + "." + key + " missing or not a number");
  return j[key].get<double>();
}

repnet::AgentPrior prior_field(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key) || !j[key].is_object())
    throw ConfigError(ctx + "." + key + " missing or not an object");
  const json& pj = j[key];
  repnet::AgentPrior p;
  p.mu = number_field(pj, "mu", ctx + "." + key);
  p.sigma2 = number_field(pj, "sigma2", ctx + "." + key);
  p.tau = number_field(pj, "tau", ctx + "." + key);
  return p;
}

std::string fmt(double x) { return repnet::csv::format_double(x); }

void write_sweep_csv(const std::string& path, const std::vector<std::string>& param_names,
                     const std::vector<repnet::welfare::SweepPoint>& points, bool per_agent) {
  repnet::csv::Writer w(path);
  std::vector<std::string> header = param_names;
  if (per_agent) header.push_back("agent");
  header.insert(header.end(), {"welfare_mean", "welfare_stderr", "replications"});
  w.row(header);
  for (const auto& pt : points) {
    std::vector<std::string> prefix;
    for (double p : pt.params) prefix.push_back(fmt(p));
    const auto& est = pt.estimate;
    std::vector<std::string> cells = prefix;
    if (per_agent) cells.push_back("total");
    cells.insert(cells.end(),
                 {fmt(est.mean), fmt(est.std_error), std::to_string(est.replications)});
    w.row(cells);
    if (per_agent) {
      for (int a = 0; a < est.per_agent_mean.size(); ++a) {
        cells = prefix;
        cells.push_back(std::to_string(a));
        cells.insert(cells.end(), {fmt(est.per_agent_mean(a)), fmt(est.per_agent_std_error(a)),
                                   std::to_string(est.replications)});
        w.row(cells);
      }
    }
  }
}

void summarize_sweep(const std::string& name,
                     const std::vector<repnet::welfare::SweepPoint>& points) {
  double lo = kInf, hi = -kInf, se = 0.0;
  for (const auto& pt : points) {
    lo = std::min(lo, pt.estimate.mean);
    hi = std::max(hi, pt.estimate.mean);
    se = std::max(se, pt.estimate.std_error);
  }
  std::cout << name << ": " << points.size() << " grid points, welfare in [" << lo << ", " << hi
            << "] +/- " << se << " max stderr\n";
}

// ---------------------------------------------------------------- commands

int cmd_validate(const CommonArgs& args) {
  const RunConfig cfg = load(args);
  std::cout << "config ok: " << cfg.constraint.n << " agents, " << cfg.constraint.edges.size()
            << " permitted links, " << cfg.mc.replications << " replications\n";
  return 0;
}

int cmd_survival(const CommonArgs& args) {
  const RunConfig cfg = load(args);
  const double threshold = cfg.extension.severance_threshold(cfg.econ.cost);
  repnet::csv::Writer w(args.out_path);
  w.row({"agent", "p_survive"});
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < cfg.constraint.n; ++i) {
    const double p = repnet::analytics::reentry_survival_probability(cfg.priors[i], threshold,
                                                                     cfg.extension.attempts());
    w.row({std::to_string(i), fmt(p)});
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  std::cout << "survival: " << cfg.constraint.n << " agents, p_survive in [" << lo << ", " << hi
            << "]\n";
  return 0;
}

int cmd_stable_nets(const CommonArgs& args) {
  const RunConfig cfg = load(args);
  const double threshold = cfg.extension.severance_threshold(cfg.econ.cost);
  const auto dist = repnet::analytics::enumerate_stable_networks(
      cfg.constraint, cfg.priors, threshold, cfg.extension.attempts());
  repnet::csv::Writer w(args.out_path);
  w.row({"network_edges", "probability"});
  double total = 0.0;
  for (const auto& entry : dist.entries) {
    std::string edges;
    for (const auto& [i, j] : entry.edges) {
      if (!edges.empty()) edges += ';';
      edges += std::to_string(i) + "-" + std::to_string(j);
    }
    w.row({edges, fmt(entry.probability)});
    total += entry.probability;
  }
  std::cout << "stable-nets: " << dist.entries.size() << " networks, total probability " << total
            << "\n";
  return 0;
}

int cmd_welfare(const CommonArgs& args, const std::string& realizations_path,
                const std::string& event_log_path) {
  const RunConfig cfg = load(args);
  const auto est = repnet::welfare::exante_welfare(cfg, args.threads, args.per_agent);

  repnet::csv::Writer w(args.out_path);
  w.row({"agent", "welfare_mean", "welfare_stderr", "replications"});
  w.row({"total", fmt(est.mean), fmt(est.std_error), std::to_string(est.replications)});
  for (int a = 0; a < est.per_agent_mean.size(); ++a)
    w.row({std::to_string(a), fmt(est.per_agent_mean(a)), fmt(est.per_agent_std_error(a)),
           std::to_string(est.replications)});

  if (!realizations_path.empty()) {
    repnet::csv::Writer rw(realizations_path);
    rw.row({"replication", "agent", "quality", "unscaled_t", "actual_t", "attempts"});
    for (int r = 0; r < cfg.mc.replications; ++r) {
      const auto draw = repnet::hitting::sample_realization(cfg, r);
      for (int i = 0; i < cfg.constraint.n; ++i)
        rw.row({std::to_string(r), std::to_string(i), fmt(draw.qualities(i)),
                fmt(draw.unscaled(i)), fmt(draw.timeline.actual(i)),
                std::to_string(draw.timeline.attempts(i))});
    }
  }

  if (!event_log_path.empty()) {
    if (cfg.mc.engine != repnet::EngineKind::kPath)
      throw ConfigError("--event-log requires the path engine");
    static const char* kNames[] = {"sever", "ostracize", "form", "enter", "reenter"};
    repnet::csv::Writer ew(event_log_path);
    ew.row({"replication", "time", "event_type", "agent_i", "agent_j"});
    for (int r = 0; r < cfg.mc.replications; ++r) {
      const auto path = repnet::pathsim::run_path(cfg, r);
      for (const auto& ev : path.events)
        ew.row({std::to_string(r), fmt(ev.time), kNames[static_cast<int>(ev.type)],
                std::to_string(ev.agent_i), std::to_string(ev.agent_j)});
    }
  }

  std::cout << "welfare: " << est.mean << " +/- " << est.std_error << " (" << est.replications
            << " replications)\n";
  return 0;
}

int cmd_compare(const CommonArgs& args) {
  const RunConfig cfg = load(args);
  const json section = load_section(args, "compare");
  if (!section.contains("topologies") || !section["topologies"].is_array() ||
      section["topologies"].empty())
    throw ConfigError("compare.topologies must be a non-empty array");

  std::vector<std::string> names;
  std::vector<repnet::NetworkConstraint> candidates;
  const int n = cfg.constraint.n;
  for (const auto& tj : section["topologies"]) {
    const std::string type = tj.value("type", std::string());
    names.push_back(tj.value("name", type));
    if (type == "complete") {
      candidates.push_back(repnet::complete_network(n));
    } else if (type == "star") {
      candidates.push_back(repnet::star_network(n));
    } else if (type == "ring") {
      candidates.push_back(repnet::ring_network(n));
    } else if (type == "empty") {
      candidates.push_back(repnet::empty_network(n));
    } else if (type == "edges") {
      std::vector<std::pair<int, int>> edges;
      for (const auto& ej : tj["edges"]) edges.emplace_back(ej[0].get<int>(), ej[1].get<int>());
      candidates.push_back(repnet::make_constraint(n, std::move(edges)));
    } else {
      throw ConfigError("compare.topologies type '" + type + "' is not recognized");
    }
  }

  const auto ranked = repnet::welfare::compare_topologies(candidates, cfg.priors, cfg.econ,
                                                          cfg.mc, cfg.extension, args.threads);
  repnet::csv::Writer w(args.out_path);
  w.row({"rank", "name", "welfare_mean", "welfare_stderr", "gap_mean", "gap_stderr",
         "replications"});
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    const auto& rt = ranked[k];
    w.row({std::to_string(k + 1), names[rt.index], fmt(rt.estimate.mean),
           fmt(rt.estimate.std_error), fmt(rt.gap_mean), fmt(rt.gap_std_error),
           std::to_string(rt.estimate.replications)});
  }
  std::cout << "compare: best '" << names[ranked.front().index] << "' at "
            << ranked.front().estimate.mean << " +/- " << ranked.front().estimate.std_error
            << "\n";
  return 0;
}

int cmd_star_sweep(const CommonArgs& args) {
  const RunConfig cfg = load(args);
  const json section = load_section(args, "star_sweep");
  const auto periphery = prior_field(section, "periphery", "star_sweep");
  const int count = static_cast<int>(section.value("periphery_count", 5.0));
  const double center_sigma2 = number_field(section, "center_sigma2", "star_sweep");
  const auto points = repnet::welfare::star_sweep(
      periphery, count, center_sigma2, number_list(section, "mu1_grid", "star_sweep"),
      number_list(section, "tau1_grid", "star_sweep"), cfg.econ, cfg.mc, args.threads,
      args.per_agent);
  write_sweep_csv(args.out_path, {"mu1", "tau1"}, points, args.per_agent);
  summarize_sweep("star-sweep", points);
  return 0;
}

int cmd_ring_compare(const CommonArgs& args) {
  const RunConfig cfg = load(args);
  const json section = load_section(args, "ring_compare");
  const auto agent = prior_field(section, "agent", "ring_compare");
  std::vector<int> sizes;
  for (double v : number_list(section, "sizes", "ring_compare"))
    sizes.push_back(static_cast<int>(v));
  const auto points = repnet::welfare::ring_compare(agent, sizes, cfg.econ, cfg.mc, args.threads,
                                                    args.per_agent);
  write_sweep_csv(args.out_path, {"n"}, points, args.per_agent);
  summarize_sweep("ring-compare", points);
  return 0;
}

int cmd_entry_sweep(const CommonArgs& args) {
  const RunConfig cfg = load(args);
  const json section = load_section(args, "entry_sweep");
  const int agent = static_cast<int>(number_field(section, "agent", "entry_sweep"));
  const auto points = repnet::welfare::entry_sweep(
      cfg, agent, number_list(section, "entry_grid", "entry_sweep"), args.threads,
      args.per_agent);
  write_sweep_csv(args.out_path, {"entry_time"}, points, args.per_agent);
  summarize_sweep("entry-sweep", points);
  return 0;
}

int cmd_subsidy_sweep(const CommonArgs& args) {
  const RunConfig cfg = load(args);
  const json section = load_section(args, "subsidy_sweep");
  const auto points = repnet::welfare::subsidy_sweep(
      cfg, number_list(section, "delta_grid", "subsidy_sweep"), args.threads, args.per_agent);
  write_sweep_csv(args.out_path, {"delta"}, points, args.per_agent);
  summarize_sweep("subsidy-sweep", points);
  return 0;
}

int cmd_reentry_sweep(const CommonArgs& args) {
  const RunConfig cfg = load(args);
  const json section = load_section(args, "reentry_sweep");
  std::vector<int> r_grid;
  for (double v : number_list(section, "R_grid", "reentry_sweep"))
    r_grid.push_back(static_cast<int>(v));
  const auto points = repnet::welfare::reentry_sweep(
      cfg, r_grid, number_list(section, "L_grid", "reentry_sweep"),
      number_list(section, "tau_scale_grid", "reentry_sweep"), args.threads, args.per_agent);
  write_sweep_csv(args.out_path, {"R", "L", "tau_scale"}, points, args.per_agent);
  summarize_sweep("reentry-sweep", points);
  return 0;
}

/// Runs the same config under both engines and reports per-agent survival
/// frequencies plus the welfare estimates side by side.
int cmd_path_check(const CommonArgs& args) {
  RunConfig cfg = load(args);
  const int n = cfg.constraint.n;
  const int reps = cfg.mc.replications;

  RunConfig analytic = cfg;
  analytic.mc.engine = repnet::EngineKind::kAnalytic;
  RunConfig path = cfg;
  path.mc.engine = repnet::EngineKind::kPath;
  if (path.mc.horizon <= 0.0) path.mc.horizon = repnet::pathsim::default_horizon(path);

  Eigen::MatrixXd surv_a = Eigen::MatrixXd::Zero(reps, n);
  Eigen::MatrixXd surv_p = Eigen::MatrixXd::Zero(reps, n);
  Eigen::VectorXd w_a(reps), w_p(reps);
  repnet::welfare::parallel_replications(reps, args.threads, [&](int r) {
    const auto draw = repnet::hitting::sample_realization(analytic, r);
    const auto [total, per] = repnet::welfare::expost_welfare(
        draw.timeline, analytic.constraint, analytic.priors, analytic.econ, analytic.extension);
    w_a(r) = total;
    for (int i = 0; i < n; ++i) surv_a(r, i) = draw.timeline.actual(i) == kInf ? 1.0 : 0.0;

    const auto result = repnet::pathsim::run_path(path, r);
    w_p(r) = result.welfare_total;
    for (int i = 0; i < n; ++i) surv_p(r, i) = result.actual(i) == kInf ? 1.0 : 0.0;
  });

  repnet::csv::Writer w(args.out_path);
  w.row({"quantity", "agent", "analytic", "path"});
  double max_gap = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto ea = repnet::welfare::estimate_from_samples(surv_a.col(i));
    const auto ep = repnet::welfare::estimate_from_samples(surv_p.col(i));
    w.row({"survival_freq", std::to_string(i), fmt(ea.mean), fmt(ep.mean)});
    max_gap = std::max(max_gap, std::abs(ea.mean - ep.mean));
  }
  const auto ea = repnet::welfare::estimate_from_samples(w_a);
  const auto ep = repnet::welfare::estimate_from_samples(w_p);
  w.row({"welfare_mean", "total", fmt(ea.mean), fmt(ep.mean)});
  w.row({"welfare_stderr", "total", fmt(ea.std_error), fmt(ep.std_error)});
  std::cout << "path-check: welfare " << ea.mean << " (analytic) vs " << ep.mean
            << " (path), max survival gap " << max_gap << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reputational-learning network simulator"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string realizations_path, event_log_path;

  auto* validate_cmd = app.add_subcommand("validate", "check a config file");
  add_common(validate_cmd, args, /*needs_out=*/false);

  auto* survival = app.add_subcommand("survival", "closed-form survival probabilities");
  add_common(survival, args, true);

  auto* stable = app.add_subcommand("stable-nets", "stable-network distribution");
  add_common(stable, args, true);

  auto* welfare_cmd = app.add_subcommand("welfare", "ex-ante welfare estimate");
  add_common(welfare_cmd, args, true);
  welfare_cmd->add_option("--dump-realizations", realizations_path,
                          "write per-replication realizations CSV");
  welfare_cmd->add_option("--event-log", event_log_path,
                          "write path-engine event log CSV (path engine only)");

  auto* compare = app.add_subcommand("compare", "rank candidate topologies");
  add_common(compare, args, true);
  auto* star = app.add_subcommand("star-sweep", "center prior sweep on a star");
  add_common(star, args, true);
  auto* ring = app.add_subcommand("ring-compare", "per-capita welfare by ring size");
  add_common(ring, args, true);
  auto* entry = app.add_subcommand("entry-sweep", "single-agent entry-time sweep");
  add_common(entry, args, true);
  auto* subsidy = app.add_subcommand("subsidy-sweep", "linking subsidy sweep");
  add_common(subsidy, args, true);
  auto* reentry = app.add_subcommand("reentry-sweep", "re-entry (R, L, tau-scale) sweep");
  add_common(reentry, args, true);
  auto* path_check = app.add_subcommand("path-check", "cross-validate the two engines");
  add_common(path_check, args, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate_cmd) return cmd_validate(args);
    if (*survival) return cmd_survival(args);
    if (*stable) return cmd_stable_nets(args);
    if (*welfare_cmd) return cmd_welfare(args, realizations_path, event_log_path);
    if (*compare) return cmd_compare(args);
    if (*star) return cmd_star_sweep(args);
    if (*ring) return cmd_ring_compare(args);
    if (*entry) return cmd_entry_sweep(args);
    if (*subsidy) return cmd_subsidy_sweep(args);
    if (*reentry) return cmd_reentry_sweep(args);
    if (*path_check) return cmd_path_check(args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
