#include "relaygeo/experiments.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <cmath>
#include <map>
#include <ostream>
#include <thread>

#include "relaygeo/beamforming.hpp"
#include "relaygeo/csv.hpp"
#include "relaygeo/flow.hpp"
#include "relaygeo/placement.hpp"
#include "relaygeo/routing.hpp"

namespace relaygeo {

namespace {

// Runs fn(i) for i in [0, count) across worker threads. Each result lands in
// its own slot, so the output order never depends on scheduling.
template <typename Result, typename Fn>
std::vector<Result> parallel_map(int count, unsigned threads, Fn fn) {
  std::vector<Result> results(static_cast<std::size_t>(count));
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max(count, 1)));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) results[static_cast<std::size_t>(i)] = fn(i);
    return results;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          results[static_cast<std::size_t>(i)] = fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return results;
}

template <typename T>
std::vector<T> flatten(std::vector<std::vector<T>> nested) {
  std::vector<T> out;
  for (auto& v : nested) {
    for (auto& x : v) out.push_back(std::move(x));
  }
  return out;
}

// Placements for K = 1..k_max. Greedy placements are nested, so one run to
// k_max yields every prefix.
std::vector<std::vector<int>> placements_by_k(const Deployment& dep, Objective objective, const ExperimentConfig& cfg,
                                              int k_min) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(cfg.k_max + 1));
  const auto options = cfg.placement_options();
  if (cfg.k_max < 1) return out;
  if (cfg.search == SearchMode::greedy) {
    const Placement p = greedy_place(dep, objective, cfg.k_max, options);
    for (int k = 1; k <= cfg.k_max; ++k) out[static_cast<std::size_t>(k)].assign(p.occupied_sites.begin(), p.occupied_sites.begin() + k);
  } else {
    for (int k = std::max(1, k_min); k <= cfg.k_max; ++k) {
      out[static_cast<std::size_t>(k)] = exhaustive_place(dep, objective, k, options).occupied_sites;
    }
  }
  return out;
}

TrialRecord measure(const Deployment& dep, const ExperimentConfig& cfg, int trial, int k, std::string scheme,
                    std::span<const int> sites) {
  const Graph g = placed_graph(dep, sites, cfg.relay_edge_model);
  return TrialRecord{trial, k, std::move(scheme), avg_max_flow(g, cfg.destinations), algebraic_connectivity(g, true)};
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (const double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (const double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return out;
}

}  // namespace

Deployment trial_deployment(const ExperimentConfig& cfg, int trial) {
  Rng rng(cfg.seed, static_cast<std::uint64_t>(trial));
  return sample_deployment(rng, cfg.nodes, cfg.width, cfg.height, cfg.radius, cfg.site_cols, cfg.site_rows);
}

std::vector<TrialRecord> run_flow_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const Objective schemes[] = {Objective::lem, Objective::lambda2, Objective::maxflow};
  auto per_trial = parallel_map<std::vector<TrialRecord>>(cfg.trials, cfg.threads, [&](int trial) {
    const Deployment dep = trial_deployment(cfg, trial);
    std::vector<TrialRecord> rows;
    std::vector<std::vector<std::vector<int>>> sites;
    for (const Objective o : schemes) sites.push_back(placements_by_k(dep, o, cfg, 1));
    for (int k = 0; k <= cfg.k_max; ++k) {
      for (std::size_t s = 0; s < std::size(schemes); ++s) {
        rows.push_back(measure(dep, cfg, trial, k, std::string(to_string(schemes[s])), sites[s][static_cast<std::size_t>(k)]));
      }
    }
    return rows;
  });
  return flatten(std::move(per_trial));
}

std::vector<TrialRecord> run_distributed_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  auto per_trial = parallel_map<std::vector<TrialRecord>>(cfg.trials, cfg.threads, [&](int trial) {
    const Deployment dep = trial_deployment(cfg, trial);
    const auto central = placements_by_k(dep, Objective::lem, cfg, 1);
    std::vector<TrialRecord> rows;
    for (int k = 0; k <= cfg.k_max; ++k) {
      rows.push_back(measure(dep, cfg, trial, k, "lem", central[static_cast<std::size_t>(k)]));
      std::vector<int> regional;
      if (k > 0) regional = distributed_place(dep, k, cfg.placement_options()).occupied_sites;
      rows.push_back(measure(dep, cfg, trial, k, "distributed-lem", regional));
    }
    return rows;
  });
  return flatten(std::move(per_trial));
}

std::vector<TrialSummary> summarize(const std::vector<TrialRecord>& records) {
  std::vector<std::pair<std::string, int>> order;
  std::map<std::pair<std::string, int>, std::pair<std::vector<double>, std::vector<double>>> groups;
  for (const auto& r : records) {
    const auto key = std::pair{r.scheme, r.k};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.first.push_back(r.avg_flow);
    it->second.second.push_back(r.lambda2);
  }
  std::vector<TrialSummary> out;
  for (const auto& key : order) {
    const auto& [flows, lambdas] = groups.at(key);
    const MeanSe f = mean_se(flows);
    const MeanSe l = mean_se(lambdas);
    out.push_back({key.first, key.second, static_cast<int>(flows.size()), f.mean, f.se, l.mean, l.se});
  }
  return out;
}

void write_trial_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  CsvWriter csv(out);
  csv.row("trial", "K", "scheme", "avg_flow", "lambda2");
  for (const auto& r : records) csv.row(r.trial, r.k, r.scheme, r.avg_flow, r.lambda2);
}

void write_summary_csv(std::ostream& out, const std::vector<TrialSummary>& rows) {
  CsvWriter csv(out);
  csv.row("scheme", "K", "trials", "mean_avg_flow", "se_avg_flow", "mean_lambda2", "se_lambda2");
  for (const auto& r : rows) csv.row(r.scheme, r.k, r.trials, r.mean_flow, r.se_flow, r.mean_lambda2, r.se_lambda2);
}

std::vector<RouteRecord> run_routing_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.k_max < 3) throw ConfigError("config: routing needs k_max >= 3 so that two relay routes exist");
  const Objective schemes[] = {Objective::lem, Objective::maxflow};
  auto per_trial = parallel_map<std::vector<RouteRecord>>(cfg.trials, cfg.threads, [&](int trial) {
    const Deployment dep = trial_deployment(cfg, trial);
    std::vector<std::vector<std::vector<int>>> sites;
    for (const Objective o : schemes) sites.push_back(placements_by_k(dep, o, cfg, 3));
    std::vector<RouteRecord> rows;
    for (int k = 3; k <= cfg.k_max; ++k) {
      for (std::size_t s = 0; s < std::size(schemes); ++s) {
        const auto& relays = sites[s][static_cast<std::size_t>(k)];
        // Routes run through the relays themselves, so they are traced on the
        // relay-as-vertex graph whatever model drove the placement.
        const Graph g = placed_graph(dep, relays, RelayEdgeModel::vertex);
        RouteRecord rec;
        rec.trial = trial;
        rec.k = k;
        rec.scheme = std::string(to_string(schemes[s]));
        const RouteSet set = all_relay_routes(g, dep, relays, cfg.gamma);
        rec.routes = static_cast<int>(set.routes.size());
        rec.unreachable = set.unreachable;
        if (set.routes.size() >= 2) {
          const ParallelRoutes pick = select_parallel_routes(set.routes);
          const Overlap o = overlap_stats(pick.first, pick.second);
          rec.selected = true;
          rec.route1_a = pick.first.relay_a;
          rec.route1_b = pick.first.relay_b;
          rec.route2_a = pick.second.relay_a;
          rec.route2_b = pick.second.relay_b;
          rec.shared_nodes = o.shared_nodes;
          rec.shared_edges = o.shared_edges;
        }
        rows.push_back(std::move(rec));
      }
    }
    return rows;
  });
  return flatten(std::move(per_trial));
}

std::vector<RouteSummary> summarize(const std::vector<RouteRecord>& records) {
  std::vector<std::pair<std::string, int>> order;
  struct Acc {
    std::vector<double> nodes;
    std::vector<double> edges;
    int trials = 0;
    int excluded = 0;
    long unreachable = 0;
  };
  std::map<std::pair<std::string, int>, Acc> groups;
  for (const auto& r : records) {
    const auto key = std::pair{r.scheme, r.k};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    Acc& acc = it->second;
    ++acc.trials;
    acc.unreachable += r.unreachable;
    if (!r.selected) {
      ++acc.excluded;
      continue;
    }
    acc.nodes.push_back(r.shared_nodes);
    acc.edges.push_back(r.shared_edges);
  }
  std::vector<RouteSummary> out;
  for (const auto& key : order) {
    const Acc& acc = groups.at(key);
    const MeanSe n = mean_se(acc.nodes);
    const MeanSe e = mean_se(acc.edges);
    out.push_back({key.first, key.second, acc.trials, acc.excluded, acc.unreachable, n.mean, n.se, e.mean, e.se});
  }
  return out;
}

void write_route_csv(std::ostream& out, const std::vector<RouteRecord>& records) {
  CsvWriter csv(out);
  csv.row("trial", "K", "scheme", "routes", "unreachable", "selected", "route1_a", "route1_b", "route2_a", "route2_b",
          "shared_nodes", "shared_edges");
  for (const auto& r : records) {
    csv.row(r.trial, r.k, r.scheme, r.routes, r.unreachable, r.selected ? 1 : 0, r.route1_a, r.route1_b, r.route2_a,
            r.route2_b, r.shared_nodes, r.shared_edges);
  }
}

void write_route_summary_csv(std::ostream& out, const std::vector<RouteSummary>& rows) {
  CsvWriter csv(out);
  csv.row("scheme", "K", "trials", "excluded", "unreachable_pairs", "mean_shared_nodes", "se_shared_nodes",
          "mean_shared_edges", "se_shared_edges");
  for (const auto& r : rows) {
    csv.row(r.scheme, r.k, r.trials, r.excluded, r.unreachable_pairs, r.mean_shared_nodes, r.se_shared_nodes,
            r.mean_shared_edges, r.se_shared_edges);
  }
}

TrainedBeamformer train_beamformer(const ExperimentConfig& cfg, int replica, int antennas, int train_size) {
  if (train_size < 4) throw ConfigError("config: training size must be at least 4");
  SplitMix64 key(cfg.seed ^ (static_cast<std::uint64_t>(antennas) << 32) ^ static_cast<std::uint64_t>(train_size));
  Rng rng(key.next(), static_cast<std::uint64_t>(replica));

  const ChannelSampler users[] = {
      ChannelSampler(exp_correlation(antennas, cfg.correlation_magnitude, cfg.user1_phase)),
      ChannelSampler(exp_correlation(antennas, cfg.correlation_magnitude, cfg.user2_phase)),
  };
  // Alternating users: an even split, up to one sample for odd sizes.
  auto draw = [&](int count) {
    std::vector<ChannelSample> out;
    for (int i = 0; i < count; ++i) {
      const int user = i % 2;
      out.push_back({users[user](rng), user + 1});
    }
    return out;
  };
  std::vector<ChannelSample> train = draw(train_size);
  std::vector<ChannelSample> test = draw(static_cast<int>(std::lround(0.4 * train_size)));

  std::vector<Eigen::VectorXcd> train_h;
  for (const auto& s : train) train_h.push_back(s.h);
  const double ridge = channel_ridge(train_h, cfg.ridge_scale);

  std::vector<LabeledSpd> labeled;
  for (const auto& s : train) labeled.push_back({channel_spd(s.h, ridge), s.user});
  SvmOptions svm;
  svm.regularization = cfg.svm_regularization;
  GeometricClassifier clf = train_classifier(labeled, svm);

  // Codewords are matched to the groups the classifier learned.
  std::vector<std::vector<Eigen::VectorXcd>> groups(2);
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    groups[static_cast<std::size_t>(clf.classify(labeled[i].matrix) - 1)].push_back(train_h[i]);
  }
  if (groups[0].empty() || groups[1].empty()) {
    for (auto& g : groups) g.clear();
    for (const auto& s : train) groups[static_cast<std::size_t>(s.user - 1)].push_back(s.h);
  }
  const double snr = std::pow(10.0, cfg.snr_db / 10.0);
  Codebook book = build_codebook(groups, antennas, snr, cfg.angle_grid);
  return TrainedBeamformer{std::move(train), std::move(test), ridge, snr, std::move(clf), std::move(book)};
}

BeamRecord run_beamforming_replica(const ExperimentConfig& cfg, int replica, int antennas, int train_size) {
  const TrainedBeamformer tb = train_beamformer(cfg, replica, antennas, train_size);
  BeamRecord rec;
  rec.seed = replica;
  rec.antennas = antennas;
  rec.train_size = train_size;
  rec.snr_db = cfg.snr_db;
  int correct = 0;
  for (const auto& s : tb.test) {
    const int group = tb.classifier.classify(channel_spd(s.h, tb.ridge));
    correct += group == s.user ? 1 : 0;
    rec.mean_rate_gml += link_rate(s.h, tb.codebook.codewords[static_cast<std::size_t>(group - 1)], tb.snr);
    const GenieRate genie = genie_rate(s.h, tb.codebook, tb.snr);
    rec.mean_rate_genie += genie.best;
    rec.mean_rate_mrt += genie.mrt;
  }
  const auto n = static_cast<double>(tb.test.size());
  rec.mean_rate_gml /= n;
  rec.mean_rate_genie /= n;
  rec.mean_rate_mrt /= n;
  rec.accuracy = correct / n;
  return rec;
}

std::vector<BeamRecord> run_beamforming_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  auto per_replica = parallel_map<std::vector<BeamRecord>>(cfg.trials, cfg.threads, [&](int replica) {
    std::vector<BeamRecord> rows;
    for (const int m : cfg.antennas) {
      for (const int s : cfg.train_sizes) rows.push_back(run_beamforming_replica(cfg, replica, m, s));
    }
    return rows;
  });
  return flatten(std::move(per_replica));
}

void write_beam_csv(std::ostream& out, const std::vector<BeamRecord>& records) {
  CsvWriter csv(out);
  csv.row("seed", "M", "S_train", "snr_db", "mean_rate_gml", "mean_rate_genie", "mean_rate_mrt", "accuracy");
  for (const auto& r : records) {
    csv.row(r.seed, r.antennas, r.train_size, r.snr_db, r.mean_rate_gml, r.mean_rate_genie, r.mean_rate_mrt,
            r.accuracy);
  }
}

std::vector<BeamSummary> summarize(const std::vector<BeamRecord>& records) {
  std::vector<std::pair<int, int>> order;
  std::map<std::pair<int, int>, std::vector<const BeamRecord*>> groups;
  for (const auto& r : records) {
    const auto key = std::pair{r.antennas, r.train_size};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }
  std::vector<BeamSummary> out;
  for (const auto& key : order) {
    const auto& rows = groups.at(key);
    std::vector<double> gml;
    BeamSummary s;
    s.antennas = key.first;
    s.train_size = key.second;
    s.seeds = static_cast<int>(rows.size());
    s.snr_db = rows.front()->snr_db;
    for (const auto* r : rows) {
      gml.push_back(r->mean_rate_gml);
      s.mean_rate_genie += r->mean_rate_genie;
      s.mean_rate_mrt += r->mean_rate_mrt;
      s.mean_accuracy += r->accuracy;
    }
    const MeanSe g = mean_se(gml);
    s.mean_rate_gml = g.mean;
    s.se_rate_gml = g.se;
    s.mean_rate_genie /= s.seeds;
    s.mean_rate_mrt /= s.seeds;
    s.mean_accuracy /= s.seeds;
    out.push_back(s);
  }
  return out;
}

void write_beam_summary_csv(std::ostream& out, const std::vector<BeamSummary>& rows) {
  CsvWriter csv(out);
  csv.row("M", "S_train", "seeds", "snr_db", "mean_rate_gml", "se_rate_gml", "mean_rate_genie", "mean_rate_mrt",
          "gml_over_genie", "mean_accuracy");
  for (const auto& r : rows) {
    csv.row(r.antennas, r.train_size, r.seeds, r.snr_db, r.mean_rate_gml, r.se_rate_gml, r.mean_rate_genie,
            r.mean_rate_mrt, r.mean_rate_gml / r.mean_rate_genie, r.mean_accuracy);
  }
}

}  // namespace relaygeo
