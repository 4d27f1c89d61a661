#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "relaygeo/beamforming.hpp"
#include "relaygeo/config.hpp"
#include "relaygeo/deployment.hpp"

namespace relaygeo {

/// Scene for trial `trial`, drawn from stream (cfg.seed, trial).
Deployment trial_deployment(const ExperimentConfig& cfg, int trial);

/// One row per (trial, K, scheme).
struct TrialRecord {
  int trial = 0;
  int k = 0;
  std::string scheme;  // lem | lambda2 | maxflow | distributed-lem
  double avg_flow = 0.0;
  double lambda2 = 0.0;
};

/// Trial means with standard errors.
struct TrialSummary {
  std::string scheme;
  int k = 0;
  int trials = 0;
  double mean_flow = 0.0;
  double se_flow = 0.0;
  double mean_lambda2 = 0.0;
  double se_lambda2 = 0.0;
};

/// All three placement schemes for K = 0..k_max on every trial.
std::vector<TrialRecord> run_flow_experiment(const ExperimentConfig& cfg);

/// Centralized LEM against the regional variant for K = 0..k_max.
std::vector<TrialRecord> run_distributed_experiment(const ExperimentConfig& cfg);

/// Grouped by (scheme, K) in first-appearance order.
std::vector<TrialSummary> summarize(const std::vector<TrialRecord>& records);

void write_trial_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<TrialSummary>& rows);

/// Parallel-route selection on the placed relays of one (trial, K, scheme).
struct RouteRecord {
  int trial = 0;
  int k = 0;
  std::string scheme;  // lem | maxflow
  int routes = 0;
  int unreachable = 0;
  bool selected = false;  // false when fewer than two routes exist
  int route1_a = -1;
  int route1_b = -1;
  int route2_a = -1;
  int route2_b = -1;
  int shared_nodes = 0;
  int shared_edges = 0;
};

struct RouteSummary {
  std::string scheme;
  int k = 0;
  int trials = 0;
  int excluded = 0;
  long unreachable_pairs = 0;
  double mean_shared_nodes = 0.0;
  double se_shared_nodes = 0.0;
  double mean_shared_edges = 0.0;
  double se_shared_edges = 0.0;
};

/// K = 3..k_max; throws ConfigError when k_max < 3.
std::vector<RouteRecord> run_routing_experiment(const ExperimentConfig& cfg);
std::vector<RouteSummary> summarize(const std::vector<RouteRecord>& records);
void write_route_csv(std::ostream& out, const std::vector<RouteRecord>& records);
void write_route_summary_csv(std::ostream& out, const std::vector<RouteSummary>& rows);

struct BeamRecord {
  int seed = 0;  // replica index; the stream is derived from (cfg.seed, M, S, replica)
  int antennas = 0;
  int train_size = 0;
  double snr_db = 0.0;
  double mean_rate_gml = 0.0;
  double mean_rate_genie = 0.0;
  double mean_rate_mrt = 0.0;
  double accuracy = 0.0;
};

/// One row per (replica, M, S); cfg.trials replicas.
std::vector<BeamRecord> run_beamforming_experiment(const ExperimentConfig& cfg);

/// Training half of a replica: sampled channels, ridge, classifier and the
/// codebook matched to the classifier's groups.
struct TrainedBeamformer {
  std::vector<ChannelSample> train;
  std::vector<ChannelSample> test;
  double ridge = 0.0;
  double snr = 0.0;  // linear
  GeometricClassifier classifier;
  Codebook codebook;
};
TrainedBeamformer train_beamformer(const ExperimentConfig& cfg, int replica, int antennas, int train_size);

/// One replica: train on S channels, test on round(0.4 S) fresh ones.
BeamRecord run_beamforming_replica(const ExperimentConfig& cfg, int replica, int antennas, int train_size);

void write_beam_csv(std::ostream& out, const std::vector<BeamRecord>& records);

/// Means over replicas per (M, S), in first-appearance order.
struct BeamSummary {
  int antennas = 0;
  int train_size = 0;
  int seeds = 0;
  double snr_db = 0.0;
  double mean_rate_gml = 0.0;
  double se_rate_gml = 0.0;
  double mean_rate_genie = 0.0;
  double mean_rate_mrt = 0.0;
  double mean_accuracy = 0.0;
};
std::vector<BeamSummary> summarize(const std::vector<BeamRecord>& records);
void write_beam_summary_csv(std::ostream& out, const std::vector<BeamSummary>& rows);

}  // namespace relaygeo
