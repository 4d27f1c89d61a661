// relaygeo: relay placement, parallel routing and codebook learning experiments.
//
//   relaygeo flow        avg flow / lambda2 of the three placement schemes, K = 0..k_max
//   relaygeo routes      LEM parallel-route overlap for K = 3..k_max
//   relaygeo distributed centralized vs regional LEM placement
//   relaygeo beamform    GML codebook rates against the genie and MRT bounds
//   relaygeo place       one placement on one deployment
//   relaygeo demo        small worked example
//
// Summaries go to stdout; --out receives the per-trial rows.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relaygeo/csv.hpp"
#include "relaygeo/experiments.hpp"
#include "relaygeo/placement.hpp"
#include "relaygeo/routing.hpp"

using namespace relaygeo;

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string out;
  std::optional<std::string> scheme;
  std::optional<int> k;
  std::optional<double> snr_db;
  std::optional<int> m;
  std::optional<std::string> train_sizes;
  std::optional<unsigned> threads;
  std::vector<std::string> sets;
  std::string deployment;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "key = value file applied before the flags");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--trials", f.trials, "Monte Carlo trials (replicas for beamform)");
  cmd->add_option("--out", f.out, "write per-trial CSV rows here");
  cmd->add_option("--threads", f.threads, "worker threads, 0 = all cores");
  cmd->add_option("--set", f.sets, "extra key=value overrides, repeatable");
}

ExperimentConfig build_config(const Flags& f, bool k_is_max) {
  ExperimentConfig cfg;
  if (!f.config.empty()) load_config_file(cfg, f.config);
  for (const auto& kv : f.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("config: --set expects key=value, got '" + kv + "'");
    set_option(cfg, std::string_view(kv).substr(0, eq), std::string_view(kv).substr(eq + 1));
  }
  if (f.seed) cfg.seed = *f.seed;
  if (f.trials) cfg.trials = *f.trials;
  if (f.threads) cfg.threads = *f.threads;
  if (f.scheme) set_option(cfg, "scheme", *f.scheme);
  if (f.k) (k_is_max ? cfg.k_max : cfg.k) = *f.k;
  if (f.snr_db) cfg.snr_db = *f.snr_db;
  if (f.m) cfg.antennas = {*f.m};
  if (f.train_sizes) cfg.train_sizes = parse_int_list(*f.train_sizes);
  validate(cfg);
  return cfg;
}

// Per-trial rows, if --out was given.
template <typename Write>
void write_rows(const Flags& f, Write&& write) {
  if (f.out.empty()) return;
  std::ofstream file(f.out, std::ios::binary);
  if (!file) throw ConfigError("config: cannot write " + f.out);
  write(file);
}

int cmd_flow(const Flags& f) {
  const ExperimentConfig cfg = build_config(f, true);
  const auto rows = run_flow_experiment(cfg);
  write_rows(f, [&](std::ostream& o) { write_trial_csv(o, rows); });
  write_summary_csv(std::cout, summarize(rows));
  return 0;
}

int cmd_distributed(const Flags& f) {
  const ExperimentConfig cfg = build_config(f, true);
  const auto rows = run_distributed_experiment(cfg);
  write_rows(f, [&](std::ostream& o) { write_trial_csv(o, rows); });
  write_summary_csv(std::cout, summarize(rows));
  return 0;
}

int cmd_routes(const Flags& f) {
  const ExperimentConfig cfg = build_config(f, true);
  const auto rows = run_routing_experiment(cfg);
  write_rows(f, [&](std::ostream& o) { write_route_csv(o, rows); });
  write_route_summary_csv(std::cout, summarize(rows));
  return 0;
}

int cmd_beamform(const Flags& f) {
  const ExperimentConfig cfg = build_config(f, false);
  const auto rows = run_beamforming_experiment(cfg);
  write_rows(f, [&](std::ostream& o) { write_beam_csv(o, rows); });
  write_beam_summary_csv(std::cout, summarize(rows));
  return 0;
}

int cmd_place(const Flags& f) {
  const ExperimentConfig cfg = build_config(f, false);
  Deployment dep;
  if (!f.deployment.empty()) {
    std::ifstream in(f.deployment);
    if (!in) throw ConfigError("config: cannot open " + f.deployment);
    try {
      dep = read_deployment(in);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    if (cfg.k >= dep.num_sites()) throw ConfigError("config: k must be below the deployment's site count");
  } else {
    dep = trial_deployment(cfg, 0);
  }
  const PlacementOptions opt = cfg.placement_options();
  const Placement p = cfg.search == SearchMode::exhaustive ? exhaustive_place(dep, cfg.scheme, cfg.k, opt)
                                                           : greedy_place(dep, cfg.scheme, cfg.k, opt);
  write_placement_csv(std::cout, dep, p);
  write_rows(f, [&](std::ostream& o) { write_placement_csv(o, dep, p); });
  const Graph g = placed_graph(dep, p.occupied_sites, opt.edge_model);
  std::cerr << "avg_max_flow " << format_double(avg_max_flow(g, opt.destinations)) << "  lambda2 "
            << format_double(algebraic_connectivity(g)) << "\n";
  return 0;
}

int cmd_demo() {
  // Two clusters out of radio range of each other and four candidate sites;
  // only site 1 can join them.
  Deployment dep;
  dep.nodes = {{0.6, 2.6}, {1.2, 3.6}, {1.4, 1.9}, {4.3, 3.1}, {5.0, 2.2}, {4.9, 4.0}};
  dep.sites = {{0.8, 5.2}, {2.9, 2.9}, {5.2, 5.4}, {3.0, 0.4}};
  PlacementOptions opt;
  const Graph base = build_disk_graph(dep, opt.edge_model);
  std::cout << "deployment: " << dep.num_nodes() << " nodes, " << dep.num_sites() << " sites, R = " << dep.radius
            << "\n";
  std::cout << "no relays: components " << count_components(base, base.active_vertices()) << ", avg_max_flow "
            << format_double(avg_max_flow(base)) << ", lambda2 " << format_double(algebraic_connectivity(base))
            << "\n";
  for (const Objective o : {Objective::lem, Objective::lambda2, Objective::maxflow}) {
    const Placement p = greedy_place(dep, o, 2, opt);
    const Graph g = placed_graph(dep, p.occupied_sites, opt.edge_model);
    std::cout << to_string(o) << ": sites " << p.occupied_sites[0] << "," << p.occupied_sites[1] << "  objective "
              << format_double(p.objective_trace.back()) << "  avg_max_flow " << format_double(avg_max_flow(g))
              << "  lambda2 " << format_double(algebraic_connectivity(g)) << "\n";
  }

  // Two-antenna codebook from 40 labelled channels per user.
  Rng rng(1);
  const ChannelSampler u1(exp_correlation(2, 0.5, std::numbers::pi));
  const ChannelSampler u2(exp_correlation(2, 0.5, 0.0));
  std::vector<std::vector<Eigen::VectorXcd>> groups(2);
  for (int i = 0; i < 40; ++i) {
    groups[0].push_back(u1(rng));
    groups[1].push_back(u2(rng));
  }
  const Codebook book = build_codebook(groups, 2, 10.0);
  for (std::size_t g = 0; g < book.codewords.size(); ++g) {
    const auto& c = book.codewords[g];
    std::cout << "codeword " << g + 1 << ": theta " << format_double(book.angles[g] * 180.0 / std::numbers::pi)
              << " deg, c = (" << format_double(c[0].real()) << ", " << format_double(c[1].real()) << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relaygeo: LEM relay placement and geometric codebook learning"};
  app.require_subcommand(1);
  Flags f;

  auto* flow = app.add_subcommand("flow", "placement schemes vs avg max flow and lambda2, K = 0..k");
  auto* routes = app.add_subcommand("routes", "overlap of LEM-selected parallel routes, K = 3..k");
  auto* distributed = app.add_subcommand("distributed", "centralized vs regional LEM placement, K = 0..k");
  auto* beamform = app.add_subcommand("beamform", "codebook rates vs training size");
  auto* place = app.add_subcommand("place", "one placement on one deployment");
  auto* demo = app.add_subcommand("demo", "small worked example");

  for (auto* cmd : {flow, routes, distributed, beamform, place}) add_common(cmd, f);
  for (auto* cmd : {flow, routes, distributed}) cmd->add_option("--k", f.k, "largest relay count K");
  place->add_option("--k", f.k, "relay count K");
  place->add_option("--scheme", f.scheme, "lem | lambda2 | maxflow")
      ->check(CLI::IsMember({"lem", "lambda2", "maxflow"}));
  place->add_option("--deployment", f.deployment, "deployment file (default: sampled from --seed)");
  beamform->add_option("--snr-db", f.snr_db, "SNR in dB");
  beamform->add_option("--m", f.m, "antenna count (default: 2 and 4)");
  beamform->add_option("--train-sizes", f.train_sizes, "comma-separated training sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*flow) return cmd_flow(f);
    if (*routes) return cmd_routes(f);
    if (*distributed) return cmd_distributed(f);
    if (*beamform) return cmd_beamform(f);
    if (*place) return cmd_place(f);
    if (*demo) return cmd_demo();
  } catch (const ConfigError& e) {
    std::cerr << "relaygeo: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "relaygeo: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
