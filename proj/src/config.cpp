#include "relaygeo/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace relaygeo {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("config: bad value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

}  // namespace

PlacementOptions ExperimentConfig::placement_options() const {
  PlacementOptions o;
  o.gamma = gamma;
  o.edge_model = relay_edge_model;
  o.regional_view = regional_view;
  o.destinations = destinations;
  o.exhaustive_budget = exhaustive_budget;
  return o;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_number<int>("list", text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ConfigError("config: empty list");
  return out;
}

void set_option(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "width") {
    cfg.width = parse_number<double>(key, value);
  } else if (key == "height") {
    cfg.height = parse_number<double>(key, value);
  } else if (key == "radius" || key == "R") {
    cfg.radius = parse_number<double>(key, value);
  } else if (key == "nodes" || key == "n") {
    cfg.nodes = parse_number<int>(key, value);
  } else if (key == "site_cols") {
    cfg.site_cols = parse_number<int>(key, value);
  } else if (key == "site_rows") {
    cfg.site_rows = parse_number<int>(key, value);
  } else if (key == "gamma") {
    cfg.gamma = parse_number<double>(key, value);
  } else if (key == "relay_edge_model") {
    if (value == "vertex") {
      cfg.relay_edge_model = RelayEdgeModel::vertex;
    } else if (value == "bridge") {
      cfg.relay_edge_model = RelayEdgeModel::bridge;
    } else {
      throw ConfigError("config: relay_edge_model must be vertex or bridge");
    }
  } else if (key == "regional_view") {
    const auto view = parse_regional_view(value);
    if (!view) throw ConfigError("config: regional_view must be inside, reachable or all");
    cfg.regional_view = *view;
  } else if (key == "destinations") {
    if (value == "all") {
      cfg.destinations = FlowDestination::all;
    } else if (value == "fixed" || value == "next_node") {
      cfg.destinations = FlowDestination::next_node;
    } else {
      throw ConfigError("config: destinations must be all or fixed");
    }
  } else if (key == "search") {
    if (value == "greedy") {
      cfg.search = SearchMode::greedy;
    } else if (value == "exhaustive") {
      cfg.search = SearchMode::exhaustive;
    } else {
      throw ConfigError("config: search must be greedy or exhaustive");
    }
  } else if (key == "exhaustive_budget") {
    cfg.exhaustive_budget = parse_number<std::size_t>(key, value);
  } else if (key == "k_max") {
    cfg.k_max = parse_number<int>(key, value);
  } else if (key == "trials") {
    cfg.trials = parse_number<int>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "threads") {
    cfg.threads = parse_number<unsigned>(key, value);
  } else if (key == "scheme") {
    const auto o = parse_objective(value);
    if (!o) throw ConfigError("config: scheme must be lem, lambda2 or maxflow");
    cfg.scheme = *o;
  } else if (key == "k") {
    cfg.k = parse_number<int>(key, value);
  } else if (key == "snr_db") {
    cfg.snr_db = parse_number<double>(key, value);
  } else if (key == "antennas" || key == "m") {
    cfg.antennas = parse_int_list(value);
  } else if (key == "train_sizes") {
    cfg.train_sizes = parse_int_list(value);
  } else if (key == "correlation_magnitude") {
    cfg.correlation_magnitude = parse_number<double>(key, value);
  } else if (key == "user1_phase") {
    cfg.user1_phase = parse_number<double>(key, value);
  } else if (key == "user2_phase") {
    cfg.user2_phase = parse_number<double>(key, value);
  } else if (key == "angle_grid") {
    cfg.angle_grid = parse_number<int>(key, value);
  } else if (key == "svm_regularization") {
    cfg.svm_regularization = parse_number<double>(key, value);
  } else if (key == "ridge_scale") {
    cfg.ridge_scale = parse_number<double>(key, value);
  } else {
    throw ConfigError("config: unknown key '" + std::string(key) + "'");
  }
}

void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(path + ":" + std::to_string(number) + ": expected key = value");
    }
    set_option(cfg, view.substr(0, eq), view.substr(eq + 1));
  }
}

void validate(const ExperimentConfig& cfg) {
  std::ostringstream msg;
  if (!(cfg.width > 0.0 && cfg.height > 0.0)) {
    msg << "area must be positive";
  } else if (!(cfg.radius > 0.0)) {
    msg << "radius must be positive";
  } else if (cfg.nodes < 2) {
    msg << "need at least 2 nodes";
  } else if (cfg.site_cols < 1 || cfg.site_rows < 1) {
    msg << "site lattice must be at least 1x1";
  } else if (!(cfg.gamma > 0.0)) {
    msg << "gamma must be positive";
  } else if (cfg.k_max < 0 || cfg.k_max >= cfg.sites()) {
    msg << "k_max must satisfy 0 <= k_max < Z (Z = " << cfg.sites() << ")";
  } else if (cfg.trials < 1) {
    msg << "trials must be positive";
  } else if (cfg.k < 1 || cfg.k >= cfg.sites()) {
    msg << "k must satisfy 1 <= k < Z";
  } else if (!(cfg.correlation_magnitude >= 0.0 && cfg.correlation_magnitude < 1.0)) {
    msg << "correlation_magnitude must lie in [0, 1)";
  } else if (cfg.angle_grid < 2) {
    msg << "angle_grid needs at least 2 points";
  } else if (!(cfg.svm_regularization > 0.0) || !(cfg.ridge_scale > 0.0)) {
    msg << "svm_regularization and ridge_scale must be positive";
  } else {
    for (const int m : cfg.antennas) {
      if (m < 1 && msg.tellp() == 0) msg << "antenna counts must be positive";
    }
    for (const int s : cfg.train_sizes) {
      if (s < 4 && msg.tellp() == 0) msg << "training sizes must be at least 4 (got " << s << ")";
    }
  }
  if (msg.tellp() != 0) throw ConfigError("config: " + msg.str());
}

}  // namespace relaygeo
