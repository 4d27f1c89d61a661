#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "relaygeo/flow.hpp"
#include "relaygeo/graph.hpp"
#include "relaygeo/placement.hpp"

namespace relaygeo {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SearchMode : std::uint8_t { greedy, exhaustive };

/// Every knob of the experiments. Defaults: 6x6 area, R = 2, 20 nodes,
/// 16 sites on a 4x4 lattice, gamma = 0.5.
struct ExperimentConfig {
  // Network scene
  double width = 6.0;
  double height = 6.0;
  double radius = 2.0;
  int nodes = 20;
  int site_cols = 4;
  int site_rows = 4;
  double gamma = 0.5;
  RelayEdgeModel relay_edge_model = RelayEdgeModel::bridge;
  RegionalView regional_view = RegionalView::all;
  FlowDestination destinations = FlowDestination::all;
  SearchMode search = SearchMode::greedy;
  std::size_t exhaustive_budget = 100000;

  int k_max = 5;
  int trials = 200;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency

  // `place` subcommand
  Objective scheme = Objective::lem;
  int k = 4;

  // Beamforming
  double snr_db = 10.0;
  std::vector<int> antennas{2, 4};
  std::vector<int> train_sizes{10, 20, 40, 60, 80, 100, 150, 200};
  double correlation_magnitude = 0.5;
  double user1_phase = 3.14159265358979323846;
  double user2_phase = 0.0;
  int angle_grid = 5;
  double svm_regularization = 1.0;
  double ridge_scale = 1e-3;

  int sites() const { return site_cols * site_rows; }
  PlacementOptions placement_options() const;
};

/// Applies one `key=value` setting. Keys use snake_case matching the field
/// names. Throws ConfigError on unknown keys or malformed values.
void set_option(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Flat `key = value` file; `#` starts a comment.
void load_config_file(ExperimentConfig& cfg, const std::string& path);

/// Throws ConfigError when the configuration cannot be run.
void validate(const ExperimentConfig& cfg);

/// Parses "10,20,50" into integers.
std::vector<int> parse_int_list(std::string_view text);

}  // namespace relaygeo
