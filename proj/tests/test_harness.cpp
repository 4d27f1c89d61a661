#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <unistd.h>

#include "relaygeo/experiments.hpp"

using namespace relaygeo;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.trials = 4;
  cfg.k_max = 3;
  cfg.threads = 1;
  return cfg;
}

template <typename Fn>
std::string csv_of(Fn&& write) {
  std::ostringstream out;
  write(out);
  return out.str();
}

std::string temp_file(const std::string& contents) {
  char name[] = "/tmp/relaygeo_cfg_XXXXXX";
  const int fd = mkstemp(name);
  REQUIRE(fd >= 0);
  close(fd);
  std::ofstream(name) << contents;
  return name;
}

}  // namespace

TEST_CASE("config defaults describe the standard scene") {
  const ExperimentConfig cfg;
  CHECK(cfg.width == 6.0);
  CHECK(cfg.height == 6.0);
  CHECK(cfg.radius == 2.0);
  CHECK(cfg.nodes == 20);
  CHECK(cfg.sites() == 16);
  CHECK(cfg.gamma == 0.5);
  CHECK(cfg.k_max == 5);
  CHECK_NOTHROW(validate(cfg));
  const PlacementOptions opt = cfg.placement_options();
  CHECK(opt.gamma == 0.5);
  CHECK(opt.edge_model == cfg.relay_edge_model);
  CHECK(opt.regional_view == cfg.regional_view);
}

TEST_CASE("config options parse") {
  ExperimentConfig cfg;
  set_option(cfg, "radius", "2.5");
  set_option(cfg, " n ", " 12 ");
  set_option(cfg, "relay_edge_model", "vertex");
  set_option(cfg, "regional_view", "inside");
  set_option(cfg, "search", "exhaustive");
  set_option(cfg, "seed", "18446744073709551615");
  set_option(cfg, "scheme", "maxflow");
  set_option(cfg, "train_sizes", "10,20,50");
  set_option(cfg, "m", "2,8");
  CHECK(cfg.radius == 2.5);
  CHECK(cfg.nodes == 12);
  CHECK(cfg.relay_edge_model == RelayEdgeModel::vertex);
  CHECK(cfg.regional_view == RegionalView::inside);
  CHECK(cfg.search == SearchMode::exhaustive);
  CHECK(cfg.seed == 18446744073709551615ull);
  CHECK(cfg.scheme == Objective::maxflow);
  CHECK(cfg.train_sizes == std::vector<int>{10, 20, 50});
  CHECK(cfg.antennas == std::vector<int>{2, 8});
}

TEST_CASE("config rejects unknown keys and malformed values") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(set_option(cfg, "radios", "2"), ConfigError);
  CHECK_THROWS_AS(set_option(cfg, "radius", "two"), ConfigError);
  CHECK_THROWS_AS(set_option(cfg, "nodes", "3.5"), ConfigError);
  CHECK_THROWS_AS(set_option(cfg, "relay_edge_model", "edge"), ConfigError);
  CHECK_THROWS_AS(set_option(cfg, "regional_view", "local"), ConfigError);
  CHECK_THROWS_AS(set_option(cfg, "scheme", "flow"), ConfigError);
  CHECK_THROWS_AS(set_option(cfg, "train_sizes", ""), ConfigError);
  CHECK_THROWS_AS(set_option(cfg, "train_sizes", "10,,20"), ConfigError);
  CHECK_THROWS_AS(parse_int_list("1;2"), ConfigError);
}

TEST_CASE("config validation") {
  auto invalid = [](auto&& tweak) {
    ExperimentConfig cfg;
    tweak(cfg);
    CHECK_THROWS_AS(validate(cfg), ConfigError);
  };
  invalid([](ExperimentConfig& c) { c.trials = 0; });
  invalid([](ExperimentConfig& c) { c.k_max = 16; });
  invalid([](ExperimentConfig& c) { c.site_cols = 2; c.site_rows = 2; c.k_max = 4; });
  invalid([](ExperimentConfig& c) { c.gamma = 0.0; });
  invalid([](ExperimentConfig& c) { c.radius = -1.0; });
  invalid([](ExperimentConfig& c) { c.nodes = 1; });
  invalid([](ExperimentConfig& c) { c.train_sizes = {10, 3}; });
  invalid([](ExperimentConfig& c) { c.correlation_magnitude = 1.0; });
  invalid([](ExperimentConfig& c) { c.k = 0; });
}

TEST_CASE("config files: comments, blanks and errors") {
  const std::string good = temp_file("# scene\nnodes = 14   # fewer nodes\n\n  trials=7\nsnr_db = 3.5\n");
  ExperimentConfig cfg;
  load_config_file(cfg, good);
  CHECK(cfg.nodes == 14);
  CHECK(cfg.trials == 7);
  CHECK(cfg.snr_db == 3.5);
  std::remove(good.c_str());

  const std::string bad = temp_file("nodes 14\n");
  CHECK_THROWS_AS(load_config_file(cfg, bad), ConfigError);
  std::remove(bad.c_str());
  CHECK_THROWS_AS(load_config_file(cfg, "/nonexistent/relaygeo.cfg"), ConfigError);
}

TEST_CASE("trial deployments are seeded per trial") {
  const ExperimentConfig cfg = small_config();
  const Deployment a = trial_deployment(cfg, 2);
  const Deployment b = trial_deployment(cfg, 2);
  const Deployment c = trial_deployment(cfg, 3);
  CHECK(a.num_nodes() == 20);
  CHECK(a.num_sites() == 16);
  CHECK(a.nodes == b.nodes);
  CHECK(a.nodes != c.nodes);
  ExperimentConfig other = cfg;
  other.seed = 2;
  CHECK(trial_deployment(other, 2).nodes != a.nodes);
}

TEST_CASE("flow experiment: byte-identical reruns, shared K=0 baseline") {
  ExperimentConfig cfg = small_config();
  const auto records = run_flow_experiment(cfg);
  CHECK(records.size() == 4u * 4u * 3u);
  const std::string first = csv_of([&](std::ostream& o) { write_trial_csv(o, records); });
  CHECK(first.rfind("trial,K,scheme,avg_flow,lambda2\n", 0) == 0);
  CHECK(first == csv_of([&](std::ostream& o) { write_trial_csv(o, run_flow_experiment(cfg)); }));
  cfg.threads = 3;
  CHECK(first == csv_of([&](std::ostream& o) { write_trial_csv(o, run_flow_experiment(cfg)); }));

  std::map<int, std::vector<const TrialRecord*>> baseline;
  for (const auto& r : records) {
    if (r.k == 0) baseline[r.trial].push_back(&r);
  }
  CHECK(baseline.size() == 4);
  for (const auto& [trial, rows] : baseline) {
    REQUIRE(rows.size() == 3);
    for (const auto* r : rows) {
      CHECK(r->avg_flow == rows[0]->avg_flow);
      CHECK(r->lambda2 == rows[0]->lambda2);
    }
  }
}

TEST_CASE("flow experiment under exhaustive search: maxflow scheme dominates lem per trial") {
  ExperimentConfig cfg;
  cfg.trials = 4;
  cfg.nodes = 10;
  cfg.site_cols = 3;
  cfg.site_rows = 2;
  cfg.k_max = 2;
  cfg.search = SearchMode::exhaustive;
  const auto records = run_flow_experiment(cfg);
  std::map<std::pair<int, int>, std::map<std::string, double>> flow;
  for (const auto& r : records) flow[{r.trial, r.k}][r.scheme] = r.avg_flow;
  for (const auto& [key, by_scheme] : flow) {
    CHECK(by_scheme.at("maxflow") >= by_scheme.at("lem") - 1e-12);
    CHECK(by_scheme.at("lem") >= 0.0);
  }
}

TEST_CASE("flow experiment rejects K beyond the sites before running") {
  ExperimentConfig cfg = small_config();
  cfg.k_max = 16;
  CHECK_THROWS_AS(run_flow_experiment(cfg), ConfigError);
}

TEST_CASE("summaries are trial means with standard errors") {
  const std::vector<TrialRecord> records{
      {0, 1, "lem", 1.0, 0.5}, {1, 1, "lem", 3.0, 0.5}, {0, 1, "maxflow", 2.0, 1.0}, {0, 0, "lem", 4.0, 2.0}};
  const auto rows = summarize(records);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].scheme == "lem");
  CHECK(rows[0].k == 1);
  CHECK(rows[0].trials == 2);
  CHECK(rows[0].mean_flow == 2.0);
  CHECK(rows[0].se_flow == doctest::Approx(1.0));
  CHECK(rows[0].se_lambda2 == 0.0);
  CHECK(rows[1].scheme == "maxflow");
  CHECK(rows[1].se_flow == 0.0);
  CHECK(rows[2].k == 0);
  CHECK(csv_of([&](std::ostream& o) { write_summary_csv(o, rows); }) ==
        "scheme,K,trials,mean_avg_flow,se_avg_flow,mean_lambda2,se_lambda2\n"
        "lem,1,2,2,1,0.5,0\n"
        "maxflow,1,1,2,0,1,0\n"
        "lem,0,1,4,0,2,0\n");
}

TEST_CASE("distributed experiment: K=1 matches centralized, reruns identical") {
  const ExperimentConfig cfg = small_config();
  const auto records = run_distributed_experiment(cfg);
  CHECK(records.size() == 4u * 4u * 2u);
  std::map<std::pair<int, int>, std::map<std::string, const TrialRecord*>> by;
  for (const auto& r : records) by[{r.trial, r.k}][r.scheme] = &r;
  for (const auto& [key, schemes] : by) {
    REQUIRE(schemes.size() == 2);
    if (key.second <= 1) {
      CHECK(schemes.at("lem")->avg_flow == schemes.at("distributed-lem")->avg_flow);
      CHECK(schemes.at("lem")->lambda2 == schemes.at("distributed-lem")->lambda2);
    }
  }
  CHECK(csv_of([&](std::ostream& o) { write_trial_csv(o, records); }) ==
        csv_of([&](std::ostream& o) { write_trial_csv(o, run_distributed_experiment(cfg)); }));
}

TEST_CASE("routing experiment: K >= 3, at most K(K-1)/2 routes per placement") {
  ExperimentConfig cfg = small_config();
  cfg.k_max = 4;
  const auto records = run_routing_experiment(cfg);
  CHECK(records.size() == 4u * 2u * 2u);
  for (const auto& r : records) {
    CHECK(r.k >= 3);
    CHECK(r.routes + r.unreachable == r.k * (r.k - 1) / 2);
    CHECK(r.selected == (r.routes >= 2));
    if (r.selected) CHECK(std::pair{r.route1_a, r.route1_b} != std::pair{r.route2_a, r.route2_b});
  }
  const auto rows = summarize(records);
  CHECK(rows.size() == 4);
  CHECK(csv_of([&](std::ostream& o) { write_route_csv(o, records); }) ==
        csv_of([&](std::ostream& o) { write_route_csv(o, run_routing_experiment(cfg)); }));

  cfg.k_max = 2;
  CHECK_THROWS_AS(run_routing_experiment(cfg), ConfigError);
}

TEST_CASE("beamforming experiment: pointwise genie dominance and determinism") {
  ExperimentConfig cfg;
  cfg.trials = 3;
  cfg.threads = 2;
  cfg.train_sizes = {10, 40};
  const auto records = run_beamforming_experiment(cfg);
  CHECK(records.size() == 3u * 2u * 2u);
  for (const auto& r : records) {
    CHECK(r.mean_rate_genie >= r.mean_rate_gml - 1e-12);
    CHECK(r.mean_rate_mrt >= r.mean_rate_genie - 1e-12);
    CHECK(r.mean_rate_gml >= 0.0);
    CHECK(r.accuracy >= 0.0);
    CHECK(r.accuracy <= 1.0);
  }
  const std::string csv = csv_of([&](std::ostream& o) { write_beam_csv(o, records); });
  CHECK(csv.rfind("seed,M,S_train,snr_db,mean_rate_gml,mean_rate_genie,mean_rate_mrt,accuracy\n", 0) == 0);
  cfg.threads = 1;
  CHECK(csv == csv_of([&](std::ostream& o) { write_beam_csv(o, run_beamforming_experiment(cfg)); }));
}

TEST_CASE("beamforming: more antennas give more genie rate") {
  ExperimentConfig cfg;
  cfg.trials = 20;
  cfg.train_sizes = {100};
  double genie[2] = {0.0, 0.0};
  for (const auto& r : run_beamforming_experiment(cfg)) genie[r.antennas == 4 ? 1 : 0] += r.mean_rate_genie;
  CHECK(genie[1] > genie[0]);
}

TEST_CASE("beamforming rejects training sets below four samples") {
  ExperimentConfig cfg;
  cfg.trials = 1;
  cfg.train_sizes = {3};
  CHECK_THROWS_AS(run_beamforming_experiment(cfg), ConfigError);
  CHECK_THROWS_AS(run_beamforming_replica(cfg, 0, 2, 3), ConfigError);
}
