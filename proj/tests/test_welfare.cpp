#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "repnet/analytics.hpp"
#include "repnet/hitting.hpp"
#include "repnet/model.hpp"
#include "repnet/welfare.hpp"

using namespace repnet;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

AgentPrior prior(double mu, double sigma2, double tau = 1.0, double entry = 0.0) {
  return {mu, sigma2, tau, entry};
}

/// Independent closed forms (std::erf only): survival probability and the
/// per-link flow surplus of a surviving agent.
double surv(const AgentPrior& p, double threshold) {
  return std::erf((p.mu - threshold) / std::sqrt(2.0 * p.sigma2));
}
double flow_value(const AgentPrior& p, double threshold, double cost) {
  const double s = surv(p, threshold);
  return (p.mu - (1.0 - s) * threshold) / s - cost;
}

RunConfig triangle_config(int replications = 20000, std::uint64_t seed = 7) {
  RunConfig cfg;
  cfg.priors = {prior(2.0, 2.0), prior(2.0, 2.0), prior(2.0, 2.0)};
  cfg.constraint = complete_network(3);
  cfg.econ = {1.0, 1.0};
  cfg.mc.replications = replications;
  cfg.mc.seed = seed;
  return validate(cfg);
}

RunConfig line_config(int n, int replications, std::uint64_t seed) {
  RunConfig cfg;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  cfg.constraint = make_constraint(n, edges);
  cfg.priors.assign(n, prior(2.0, 2.0));
  cfg.econ = {1.0, 1.0};
  cfg.mc.replications = replications;
  cfg.mc.seed = seed;
  return validate(cfg);
}

hitting::Timeline pair_timeline(double t0, double t1) {
  hitting::Timeline tl;
  tl.actual = Eigen::Vector2d(t0, t1);
  tl.survive_start = Eigen::Vector2d(t0 == kInf ? 0.0 : kInf, t1 == kInf ? 0.0 : kInf);
  tl.active = {{{0.0, t0}}, {{0.0, t1}}};
  tl.attempts = Eigen::Vector2i(1, 1);
  return tl;
}

struct PairedGap {
  double mean;
  double se;
};
PairedGap paired_gap(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd d = a - b;
  const double mean = welfare::pairwise_sum(d) / d.size();
  const Eigen::VectorXd sq = (d.array() - mean).square();
  const double var = welfare::pairwise_sum(sq) / (d.size() - 1.0);
  return {mean, std::sqrt(var / d.size())};
}

}  // namespace

TEST_CASE("pairwise sum and estimate_from_samples") {
  Eigen::VectorXd v(5);
  v << 1.0, 2.0, 3.0, 4.0, 5.0;
  CHECK(welfare::pairwise_sum(v) == 15.0);

  Eigen::VectorXd big = Eigen::VectorXd::Constant(100000, 0.1);
  CHECK(welfare::pairwise_sum(big) == doctest::Approx(10000.0).epsilon(1e-12));

  const welfare::WelfareEstimate est = welfare::estimate_from_samples(v);
  CHECK(est.mean == doctest::Approx(3.0).epsilon(1e-15));
  // sample sd = sqrt(2.5), se = sqrt(2.5/5)
  CHECK(est.std_error == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(est.replications == 5);
}

TEST_CASE("ex-post welfare hand examples") {
  const std::vector<AgentPrior> priors = {prior(2.0, 2.0), prior(2.0, 2.0)};
  const NetworkConstraint pair = complete_network(2);
  const EconomyParams econ{1.0, 1.0};
  const ExtensionConfig base{};
  const double v = flow_value(priors[0], 1.0, 1.0);  // (mu - c) / P

  SUBCASE("both agents ostracized -> zero welfare") {
    auto [total, per] = welfare::expost_welfare(pair_timeline(0.7, 1.9), pair, priors, econ, base);
    CHECK(total == 0.0);
    CHECK(per(0) == 0.0);
    CHECK(per(1) == 0.0);
  }

  SUBCASE("both survive -> each accrues the neighbor's surplus forever") {
    auto [total, per] = welfare::expost_welfare(pair_timeline(kInf, kInf), pair, priors, econ, base);
    CHECK(per(0) == doctest::Approx(v).epsilon(1e-14));
    CHECK(per(1) == doctest::Approx(v).epsilon(1e-14));
    CHECK(total == doctest::Approx(2.0 * v).epsilon(1e-14));
    CHECK(total == doctest::Approx(2.0 / std::erf(0.5)).epsilon(1e-14));
  }

  SUBCASE("one finite hit truncates its own accrual, zeroes its contribution") {
    auto [total, per] =
        welfare::expost_welfare(pair_timeline(std::log(2.0), kInf), pair, priors, econ, base);
    CHECK(per(0) == doctest::Approx(0.5 * v).epsilon(1e-14));  // (1 - e^{-ln 2}) / rho
    CHECK(per(1) == 0.0);
    CHECK(total == doctest::Approx(0.5 * v).epsilon(1e-14));
  }

  SUBCASE("no constraint edge -> no welfare regardless of survival") {
    auto [total, per] =
        welfare::expost_welfare(pair_timeline(kInf, kInf), empty_network(2), priors, econ, base);
    CHECK(total == 0.0);
  }

  SUBCASE("subsidy threshold shifts the conditional surplus") {
    ExtensionConfig sub;
    sub.variant = ExtensionVariant::kSubsidy;
    sub.delta = 0.5;
    const double vs = flow_value(priors[0], 0.5, 1.0);
    auto [total, per] = welfare::expost_welfare(pair_timeline(kInf, kInf), pair, priors, econ, sub);
    CHECK(per(0) == doctest::Approx(vs).epsilon(1e-13));
    CHECK(total == doctest::Approx(2.0 * vs).epsilon(1e-13));
  }

  SUBCASE("late entrant: accrual starts at the entrant's surviving stint") {
    hitting::Timeline tl;
    tl.actual = Eigen::Vector2d(kInf, kInf);
    tl.survive_start = Eigen::Vector2d(0.0, 1.0);
    tl.active = {{{0.0, kInf}}, {{1.0, kInf}}};
    tl.attempts = Eigen::Vector2i(1, 1);
    ExtensionConfig entry;
    entry.variant = ExtensionVariant::kEntry;
    auto [total, per] = welfare::expost_welfare(tl, pair, priors, econ, entry);
    // agent 0 sees agent 1 only from t = 1; agent 1 is itself present from 1
    CHECK(per(0) == doctest::Approx(v * std::exp(-1.0)).epsilon(1e-13));
    CHECK(per(1) == doctest::Approx(v * std::exp(-1.0)).epsilon(1e-13));
  }

  SUBCASE("re-entry: interrupted presence, neighbor counted from its surviving stint") {
    hitting::Timeline tl;
    tl.actual = Eigen::Vector2d(kInf, kInf);
    tl.survive_start = Eigen::Vector2d(1.2, 0.0);
    tl.active = {{{0.0, 1.0}, {1.2, kInf}}, {{0.0, kInf}}};
    tl.attempts = Eigen::Vector2i(2, 1);
    ExtensionConfig re;
    re.variant = ExtensionVariant::kReentry;
    re.max_attempts = 2;
    re.downtime = 0.2;
    auto [total, per] = welfare::expost_welfare(tl, pair, priors, econ, re);
    // agent 0 accrues from the always-surviving agent 1 over both stints
    const double d0 = (1.0 - std::exp(-1.0)) + std::exp(-1.2);
    CHECK(per(0) == doctest::Approx(v * d0).epsilon(1e-13));
    // agent 1 accrues from agent 0 only after its surviving stint begins
    CHECK(per(1) == doctest::Approx(v * std::exp(-1.2)).epsilon(1e-13));
  }
}

TEST_CASE("ex-post welfare matches the direct per-agent discounted-sum oracle") {
  // Oracle: W_i = (1 - e^{-rho t_i})/rho * sum over surviving constraint
  // neighbors j of (mu_j - c)/P_j, evaluated directly from the realization.
  std::uint64_t lcg = 99;
  auto unif = [&]() {
    lcg = lcg * 6364136223846793005ULL + 1442695040888963407ULL;
    return ((lcg >> 11) + 0.5) / 9007199254740992.0;
  };
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + static_cast<int>(unif() * 4);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (unif() < 0.6) edges.emplace_back(i, j);
    RunConfig cfg;
    cfg.constraint = make_constraint(n, edges);
    for (int i = 0; i < n; ++i)
      cfg.priors.push_back(prior(1.2 + 1.8 * unif(), 0.5 + 2.5 * unif(), 0.5 + 1.5 * unif()));
    cfg.econ = {1.0, 0.5 + unif()};
    cfg.mc.seed = 1000 + trial;
    cfg = validate(cfg);

    const auto nbrs = cfg.constraint.neighbor_lists();
    for (std::uint64_t rep = 0; rep < 40; ++rep) {
      const hitting::RealizationDraw draw = hitting::sample_realization(cfg, rep);
      auto [total, per] = welfare::expost_welfare(draw.timeline, cfg.constraint, cfg.priors,
                                                  cfg.econ, cfg.extension);
      double oracle_total = 0.0;
      for (int i = 0; i < n; ++i) {
        const double t = draw.timeline.actual(i);
        const double disc =
            (t == kInf ? 1.0 : 1.0 - std::exp(-cfg.econ.rho * t)) / cfg.econ.rho;
        double rate = 0.0;
        for (int j : nbrs[i])
          if (draw.timeline.actual(j) == kInf)
            rate += (cfg.priors[j].mu - cfg.econ.cost) / surv(cfg.priors[j], cfg.econ.cost);
        const double w = disc * rate;
        CHECK(per(i) == doctest::Approx(w).epsilon(1e-11));
        oracle_total += w;
      }
      CHECK(total == doctest::Approx(oracle_total).epsilon(1e-11));
    }
  }
}

TEST_CASE("no-learning benchmark and fast-learning limit") {
  const EconomyParams econ{1.0, 2.0};
  const std::vector<AgentPrior> pairp = {prior(2.0, 2.0), prior(3.0, 1.0)};

  auto [pair_total, pair_per] = welfare::no_learning_welfare(complete_network(2), pairp, econ);
  CHECK(pair_per(0) == doctest::Approx((3.0 - 1.0) / 2.0).epsilon(1e-15));
  CHECK(pair_per(1) == doctest::Approx((2.0 - 1.0) / 2.0).epsilon(1e-15));
  CHECK(pair_total == doctest::Approx(1.5).epsilon(1e-15));

  auto [empty_total, empty_per] =
      welfare::no_learning_welfare(empty_network(2), pairp, econ);
  CHECK(empty_total == 0.0);

  const std::vector<AgentPrior> tri(3, prior(2.0, 2.0));
  auto [tri_total, tri_per] = welfare::no_learning_welfare(complete_network(3), tri, {1.0, 1.0});
  CHECK(tri_per(0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(tri_total == doctest::Approx(6.0).epsilon(1e-15));

  // fast-learning limit: (1/rho) sum_i P(S_i) sum_j (mu_j - c)
  const double fl = welfare::fast_learning_limit_welfare(complete_network(2), pairp, econ);
  const double expect =
      (surv(pairp[0], 1.0) * (3.0 - 1.0) + surv(pairp[1], 1.0) * (2.0 - 1.0)) / 2.0;
  CHECK(fl == doctest::Approx(expect).epsilon(1e-12));

  // nearly-degenerate priors: everyone survives, both limits collapse to W*
  const std::vector<AgentPrior> sharp(3, prior(2.0, 1e-12));
  auto [wstar, wstar_per] = welfare::no_learning_welfare(complete_network(3), sharp, {1.0, 1.0});
  CHECK(welfare::fast_learning_limit_welfare(complete_network(3), sharp, {1.0, 1.0}) ==
        doctest::Approx(wstar).epsilon(1e-9));
}

TEST_CASE("ex-ante welfare basics") {
  SUBCASE("isolated single agent has exactly zero welfare") {
    RunConfig cfg;
    cfg.priors = {prior(2.0, 2.0)};
    cfg.constraint = empty_network(1);
    cfg.econ = {1.0, 1.0};
    cfg.mc.replications = 500;
    cfg = validate(cfg);
    const welfare::WelfareEstimate est = welfare::exante_welfare(cfg);
    CHECK(est.mean == 0.0);
    CHECK(est.std_error == 0.0);
    CHECK(est.replications == 500);
  }

  SUBCASE("learning strictly destroys welfare relative to the benchmark") {
    const RunConfig cfg = triangle_config(20000);
    const welfare::WelfareEstimate est = welfare::exante_welfare(cfg);
    auto [wstar, per] = welfare::no_learning_welfare(cfg.constraint, cfg.priors, cfg.econ);
    CHECK(wstar == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(est.mean + 3.0 * est.std_error < wstar);
    // and the estimate is a genuine average of per-replication draws
    const welfare::SampleSet s = welfare::exante_welfare_samples(cfg);
    CHECK(est.mean == welfare::pairwise_sum(s.totals) / s.totals.size());
  }

  SUBCASE("per-agent draws sum to the total draw") {
    const RunConfig cfg = triangle_config(2000);
    const welfare::SampleSet s = welfare::exante_welfare_samples(cfg, 1, /*per_agent=*/true);
    REQUIRE(s.per_agent.rows() == 2000);
    REQUIRE(s.per_agent.cols() == 3);
    for (int r = 0; r < s.per_agent.rows(); ++r)
      CHECK(s.totals(r) == doctest::Approx(s.per_agent.row(r).sum()).epsilon(1e-12));
    const welfare::WelfareEstimate est = welfare::exante_welfare(cfg, 1, true);
    REQUIRE(est.per_agent_mean.size() == 3);
    CHECK(est.per_agent_mean.sum() == doctest::Approx(est.mean).epsilon(1e-12));
  }

  SUBCASE("deterministic across repeated runs and thread counts") {
    const RunConfig cfg = triangle_config(4000);
    const welfare::SampleSet a = welfare::exante_welfare_samples(cfg, 1);
    const welfare::SampleSet b = welfare::exante_welfare_samples(cfg, 1);
    const welfare::SampleSet c = welfare::exante_welfare_samples(cfg, 7);
    REQUIRE(a.totals.size() == b.totals.size());
    REQUIRE(a.totals.size() == c.totals.size());
    for (int r = 0; r < a.totals.size(); ++r) {
      CHECK(a.totals(r) == b.totals(r));
      CHECK(a.totals(r) == c.totals(r));
    }
  }

  SUBCASE("standard error shrinks like 1/sqrt(replications)") {
    const welfare::WelfareEstimate small = welfare::exante_welfare(triangle_config(10000, 3), 4);
    const welfare::WelfareEstimate large = welfare::exante_welfare(triangle_config(40000, 3), 4);
    const double ratio = large.std_error / small.std_error;
    CHECK(ratio > 0.45);
    CHECK(ratio < 0.55);
  }
}

TEST_CASE("extension reductions are bit-exact") {
  const RunConfig base = triangle_config(3000, 11);
  const welfare::SampleSet ref = welfare::exante_welfare_samples(base);

  SUBCASE("subsidy delta = 0") {
    RunConfig cfg = base;
    cfg.extension.variant = ExtensionVariant::kSubsidy;
    cfg.extension.delta = 0.0;
    const welfare::SampleSet s = welfare::exante_welfare_samples(validate(cfg));
    for (int r = 0; r < ref.totals.size(); ++r) CHECK(s.totals(r) == ref.totals(r));
  }
  SUBCASE("re-entry R = 1") {
    RunConfig cfg = base;
    cfg.extension.variant = ExtensionVariant::kReentry;
    cfg.extension.max_attempts = 1;
    cfg.extension.downtime = 0.3;
    const welfare::SampleSet s = welfare::exante_welfare_samples(validate(cfg));
    for (int r = 0; r < ref.totals.size(); ++r) CHECK(s.totals(r) == ref.totals(r));
  }
  SUBCASE("entry with all entry times zero") {
    RunConfig cfg = base;
    cfg.extension.variant = ExtensionVariant::kEntry;
    const welfare::SampleSet s = welfare::exante_welfare_samples(validate(cfg));
    for (int r = 0; r < ref.totals.size(); ++r) CHECK(s.totals(r) == ref.totals(r));
  }
}

TEST_CASE("own precision weakly hurts pathwise and strictly hurts on average") {
  RunConfig lo = triangle_config(20000, 21);
  RunConfig hi = lo;
  hi.priors[0].tau = 2.0;

  const welfare::SampleSet a = welfare::exante_welfare_samples(lo, 4, true);
  const welfare::SampleSet b = welfare::exante_welfare_samples(hi, 4, true);
  // common random numbers: agent 0's welfare never rises in any replication
  for (int r = 0; r < a.per_agent.rows(); ++r)
    CHECK(b.per_agent(r, 0) <= a.per_agent(r, 0) + 1e-12);
  const PairedGap g = paired_gap(a.per_agent.col(0), b.per_agent.col(0));
  CHECK(g.mean > 3.0 * g.se);
}

TEST_CASE("a direct neighbor benefits from the other's precision on a unique path") {
  SUBCASE("two agents: the survivor's rate never changes, so the effect is exactly zero") {
    RunConfig lo = line_config(2, 4000, 31);
    RunConfig hi = lo;
    hi.priors[0].tau = 4.0;
    const welfare::SampleSet a = welfare::exante_welfare_samples(lo, 1, true);
    const welfare::SampleSet b = welfare::exante_welfare_samples(hi, 1, true);
    for (int r = 0; r < a.per_agent.rows(); ++r)
      CHECK(b.per_agent(r, 1) == a.per_agent(r, 1));
  }

  SUBCASE("three-agent line: the middle agent strictly gains") {
    RunConfig lo = line_config(3, 30000, 31);
    RunConfig hi = lo;
    hi.priors[0].tau = 4.0;
    const welfare::SampleSet a = welfare::exante_welfare_samples(lo, 4, true);
    const welfare::SampleSet b = welfare::exante_welfare_samples(hi, 4, true);
    const PairedGap g = paired_gap(b.per_agent.col(1), a.per_agent.col(1));
    CHECK(g.mean > 3.0 * g.se);
  }
}

TEST_CASE("odd/even alternation along a line") {
  // 5-line 0-1-2-3-4, raising tau_0: the sign of the effect alternates with
  // the hop count for interior agents; the far endpoint's consumption rate
  // never changes, so its welfare is exactly invariant.
  RunConfig lo = line_config(5, 40000, 41);
  RunConfig hi = lo;
  hi.priors[0].tau = 4.0;
  const welfare::SampleSet a = welfare::exante_welfare_samples(lo, 4, true);
  const welfare::SampleSet b = welfare::exante_welfare_samples(hi, 4, true);

  const PairedGap g1 = paired_gap(b.per_agent.col(1), a.per_agent.col(1));  // 1 hop: up
  const PairedGap g2 = paired_gap(a.per_agent.col(2), b.per_agent.col(2));  // 2 hops: down
  const PairedGap g3 = paired_gap(b.per_agent.col(3), a.per_agent.col(3));  // 3 hops: up
  CHECK(g1.mean > 3.0 * g1.se);
  CHECK(g2.mean > 3.0 * g2.se);
  CHECK(g3.mean > 3.0 * g3.se);
  for (int r = 0; r < a.per_agent.rows(); ++r)
    CHECK(b.per_agent(r, 4) == a.per_agent(r, 4));
}

TEST_CASE("with cycles a neighbor's precision can hurt") {
  // Relay fixture: agents 0-1-2 form a line; agents 3..k-1 link to both 0
  // and 1. Agent 2 is near-certainly good and valuable, the relay agents are
  // modest. Sharply raising agent 0's precision removes it quickly, which
  // halves the relay agents' rates so they keep feeding agent 1 longer;
  // agent 1 is then ostracized sooner and loses its valuable link with
  // agent 2. The reversal needs enough relay agents to outweigh the direct
  // (beneficial) loss of agent 0's own contribution to agent 1's rate.
  const int k = 20;
  RunConfig lo;
  std::vector<std::pair<int, int>> edges = {{0, 1}, {1, 2}};
  for (int i = 3; i < k; ++i) {
    edges.emplace_back(0, i);
    edges.emplace_back(1, i);
  }
  lo.constraint = make_constraint(k, edges);
  lo.priors.assign(k, prior(1.3, 1.0));
  lo.priors[0] = prior(1.5, 2.0, 0.05);
  lo.priors[1] = prior(1.5, 2.0);
  lo.priors[2] = prior(10.0, 1e-12);
  lo.econ = {1.0, 1.0};
  lo.mc.replications = 40000;
  lo.mc.seed = 51;
  lo = validate(lo);

  RunConfig hi = lo;
  hi.priors[0].tau = 100.0;

  const welfare::SampleSet a = welfare::exante_welfare_samples(lo, 4, true);
  const welfare::SampleSet b = welfare::exante_welfare_samples(hi, 4, true);
  const PairedGap g = paired_gap(a.per_agent.col(1), b.per_agent.col(1));
  CHECK(g.mean > 3.0 * g.se);
}

TEST_CASE("topology comparison") {
  const EconomyParams econ{1.0, 1.0};
  McConfig mc;
  mc.replications = 20000;
  mc.seed = 61;

  SUBCASE("identical candidates tie exactly") {
    const std::vector<AgentPrior> agents(4, prior(2.0, 2.0));
    const std::vector<NetworkConstraint> cands = {complete_network(4), complete_network(4)};
    const auto ranked = welfare::compare_topologies(cands, agents, econ, mc);
    REQUIRE(ranked.size() == 2);
    CHECK(ranked[0].estimate.mean == ranked[1].estimate.mean);
    CHECK(ranked[1].gap_mean == 0.0);
  }

  SUBCASE("reliable agents: the complete network dominates") {
    const std::vector<AgentPrior> agents(5, prior(3.0, 1.0));
    const std::vector<NetworkConstraint> cands = {star_network(5), complete_network(5),
                                                  ring_network(5), empty_network(5)};
    const auto ranked = welfare::compare_topologies(cands, agents, econ, mc);
    REQUIRE(ranked.size() == 4);
    CHECK(ranked[0].index == 1);                 // complete on top
    CHECK(ranked.back().index == 3);             // empty at the bottom
    CHECK(ranked.back().estimate.mean == 0.0);   // isolated agents earn nothing
    for (std::size_t r = 1; r < ranked.size(); ++r)
      CHECK(ranked[r].gap_mean > 3.0 * ranked[r].gap_std_error);
  }
}

TEST_CASE("sweep reductions and structure") {
  const RunConfig base = triangle_config(4000, 71);
  const double base_mean = welfare::exante_welfare(base).mean;

  SUBCASE("subsidy sweep: delta = 0 point reproduces the base estimate") {
    const auto pts = welfare::subsidy_sweep(base, {0.0, 2.0});
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].params == std::vector<double>{0.0});
    CHECK(pts[0].estimate.mean == base_mean);
    CHECK(pts[1].estimate.mean != base_mean);
  }

  SUBCASE("re-entry sweep: R = 1 at unit precision scale reproduces the base") {
    const auto pts = welfare::reentry_sweep(base, {1, 3}, {0.5}, {1.0, 2.0});
    REQUIRE(pts.size() == 4);
    bool found = false;
    for (const auto& pt : pts) {
      REQUIRE(pt.params.size() == 3);
      if (pt.params[0] == 1.0 && pt.params[2] == 1.0) {
        CHECK(pt.estimate.mean == base_mean);
        found = true;
      }
    }
    CHECK(found);
  }

  SUBCASE("entry sweep: zero entry time reproduces the base") {
    RunConfig entry_base = base;
    entry_base.extension.variant = ExtensionVariant::kEntry;
    const auto pts = welfare::entry_sweep(validate(entry_base), 2, {0.0, 1.0});
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].estimate.mean == base_mean);
    CHECK(pts[1].estimate.mean < base_mean);  // delaying an agent defers surplus here
  }

  SUBCASE("ring comparison is per-capita and the 3-ring equals the triangle") {
    McConfig mc = base.mc;
    const auto pts = welfare::ring_compare(base.priors[0], {3, 4}, base.econ, mc);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].params == std::vector<double>{3.0});
    CHECK(pts[0].estimate.mean == doctest::Approx(base_mean / 3.0).epsilon(1e-12));
  }

  SUBCASE("star sweep: grid layout; a certain center makes tau_1 irrelevant") {
    McConfig mc;
    mc.replications = 2000;
    mc.seed = 77;
    const auto pts = welfare::star_sweep(prior(2.0, 2.0), 4, 1e-12, {2.0, 2.5}, {0.5, 4.0},
                                         {1.0, 1.0}, mc);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].params == std::vector<double>{2.0, 0.5});
    CHECK(pts[1].params == std::vector<double>{2.0, 4.0});
    CHECK(pts[0].estimate.mean == doctest::Approx(pts[1].estimate.mean).epsilon(1e-9));
    CHECK(pts[2].estimate.mean == doctest::Approx(pts[3].estimate.mean).epsilon(1e-9));
    CHECK(pts[2].estimate.mean > pts[0].estimate.mean);  // a better center helps
  }
}
