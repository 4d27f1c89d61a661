#include "relaygeo/placement.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include "relaygeo/csv.hpp"

namespace relaygeo {

std::string_view to_string(Objective o) {
  switch (o) {
    case Objective::lem:
      return "lem";
    case Objective::lambda2:
      return "lambda2";
    case Objective::maxflow:
      return "maxflow";
  }
  return "?";
}

std::optional<Objective> parse_objective(std::string_view name) {
  if (name == "lem") return Objective::lem;
  if (name == "lambda2") return Objective::lambda2;
  if (name == "maxflow") return Objective::maxflow;
  return std::nullopt;
}

std::string_view to_string(RegionalView v) {
  switch (v) {
    case RegionalView::inside:
      return "inside";
    case RegionalView::reachable:
      return "reachable";
    case RegionalView::all:
      return "all";
  }
  return "?";
}

std::optional<RegionalView> parse_regional_view(std::string_view name) {
  if (name == "inside") return RegionalView::inside;
  if (name == "reachable") return RegionalView::reachable;
  if (name == "all") return RegionalView::all;
  return std::nullopt;
}

double objective_lem(const Graph& g_with_relays, const SpdMatrix<double>& baseline, double gamma) {
  if (g_with_relays.num_vertices() != baseline.dim()) {
    std::ostringstream msg;
    msg << "objective_lem: graph has " << g_with_relays.num_vertices() << " vertices, baseline is "
        << baseline.dim() << "-dimensional";
    throw std::invalid_argument(msg.str());
  }
  return lem_distance(regularized_laplacian(g_with_relays, gamma), baseline);
}

ObjectiveEvaluator::ObjectiveEvaluator(Objective objective, const Graph& baseline,
                                       const PlacementOptions& options)
    : objective_(objective), options_(options) {
  if (objective == Objective::lem) baseline_log_ = matrix_log(regularized_laplacian(baseline, options.gamma));
}

double ObjectiveEvaluator::operator()(const Graph& candidate) const {
  switch (objective_) {
    case Objective::lem: {
      if (candidate.num_vertices() != baseline_log_->dim()) {
        throw std::invalid_argument("objective: candidate graph dimension differs from baseline");
      }
      return lem_distance(matrix_log(regularized_laplacian(candidate, options_.gamma)), *baseline_log_);
    }
    case Objective::lambda2:
      return algebraic_connectivity(candidate, true);
    case Objective::maxflow:
      return avg_max_flow(candidate, options_.destinations);
  }
  return 0.0;
}

Graph placed_graph(const Deployment& dep, std::span<const int> sites, RelayEdgeModel model) {
  return occupy_relays(build_disk_graph(dep, model), dep, sites);
}

namespace {

// Greedy core without the K < Z precondition, shared by the regional search.
Placement greedy_core(const Deployment& dep, Objective objective, int k, const PlacementOptions& options) {
  const Graph baseline = build_disk_graph(dep, options.edge_model);
  const ObjectiveEvaluator score(objective, baseline, options);
  Placement out;
  out.objective = objective;
  Graph current = baseline;
  std::vector<char> taken(static_cast<std::size_t>(dep.num_sites()), 0);
  for (int step = 0; step < k; ++step) {
    int best_site = -1;
    double best_value = 0.0;
    std::optional<Graph> best_graph;
    for (int s = 0; s < dep.num_sites(); ++s) {
      if (taken[static_cast<std::size_t>(s)]) continue;
      const int one[] = {s};
      Graph candidate = occupy_relays(current, dep, one);
      const double value = score(candidate);
      if (best_site < 0 || value > best_value) {
        best_site = s;
        best_value = value;
        best_graph.emplace(std::move(candidate));
      }
    }
    taken[static_cast<std::size_t>(best_site)] = 1;
    out.occupied_sites.push_back(best_site);
    out.objective_trace.push_back(best_value);
    current = std::move(*best_graph);
  }
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

void check_k(const Deployment& dep, int k, const char* what) {
  if (k < 1 || k >= dep.num_sites()) {
    std::ostringstream msg;
    msg << what << ": need 1 <= K < Z, got K=" << k << ", Z=" << dep.num_sites();
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

Placement greedy_place(const Deployment& dep, Objective objective, int k, const PlacementOptions& options) {
  check_k(dep, k, "greedy_place");
  return greedy_core(dep, objective, k, options);
}

Placement exhaustive_place(const Deployment& dep, Objective objective, int k, const PlacementOptions& options) {
  check_k(dep, k, "exhaustive_place");
  const auto z = static_cast<std::size_t>(dep.num_sites());
  const std::size_t subsets = binomial(z, static_cast<std::size_t>(k));
  if (subsets > options.exhaustive_budget) {
    std::ostringstream msg;
    msg << "exhaustive_place: C(" << z << "," << k << ") = " << subsets << " subsets exceeds the budget of "
        << options.exhaustive_budget << "; use greedy_place";
    throw std::length_error(msg.str());
  }
  const Graph baseline = build_disk_graph(dep, options.edge_model);
  const ObjectiveEvaluator score(objective, baseline, options);

  std::vector<int> subset(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = i;
  std::vector<int> best;
  double best_value = 0.0;
  for (;;) {
    const double value = score(occupy_relays(baseline, dep, subset));
    if (best.empty() || value > best_value) {
      best = subset;
      best_value = value;
    }
    // Next combination in lexicographic order.
    int i = k - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == static_cast<int>(z) - k + i) --i;
    if (i < 0) break;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }

  Placement out;
  out.objective = objective;
  out.occupied_sites = best;
  // Prefix values of the chosen set; the last entry is the optimum.
  for (std::size_t i = 1; i < best.size(); ++i) {
    out.objective_trace.push_back(score(occupy_relays(baseline, dep, std::span(best).first(i))));
  }
  out.objective_trace.push_back(best_value);
  return out;
}

std::pair<int, int> region_grid(int k) {
  if (k < 1) throw std::invalid_argument("region_grid: K must be positive");
  int rows = 1;
  for (int r = 1; r * r <= k; ++r) {
    if (k % r == 0) rows = r;
  }
  return {rows, k / rows};
}

Placement distributed_place(const Deployment& dep, int k, const PlacementOptions& options) {
  check_k(dep, k, "distributed_place");
  const auto [rows, cols] = region_grid(k);
  const double dx = dep.width / cols;
  const double dy = dep.height / rows;
  // Half-open cells, with the far edge of the area folded into the last cell.
  auto cell_of = [&](const Point& p) {
    const int c = std::min(cols - 1, static_cast<int>(p.x() / dx));
    const int r = std::min(rows - 1, static_cast<int>(p.y() / dy));
    return r * cols + c;
  };

  Placement out;
  out.objective = Objective::lem;
  for (int region = 0; region < k; ++region) {
    Deployment local;
    local.radius = dep.radius;
    local.width = dep.width;
    local.height = dep.height;
    std::vector<int> global_site;
    for (int s = 0; s < dep.num_sites(); ++s) {
      if (cell_of(dep.sites[static_cast<std::size_t>(s)]) == region) {
        local.sites.push_back(dep.sites[static_cast<std::size_t>(s)]);
        global_site.push_back(s);
      }
    }
    if (global_site.empty()) {
      out.empty_regions.push_back(region);
      continue;
    }
    for (const auto& p : dep.nodes) {
      bool seen = false;
      switch (options.regional_view) {
        case RegionalView::inside:
          seen = cell_of(p) == region;
          break;
        case RegionalView::reachable:
          for (const auto& site : local.sites) seen = seen || (p - site).norm() < dep.radius;
          break;
        case RegionalView::all:
          seen = true;
          break;
      }
      if (seen) local.nodes.push_back(p);
    }
    const Placement pick = greedy_core(local, Objective::lem, 1, options);
    out.occupied_sites.push_back(global_site[static_cast<std::size_t>(pick.occupied_sites.front())]);
    out.objective_trace.push_back(pick.objective_trace.front());
  }
  return out;
}

void write_placement_csv(std::ostream& out, const Deployment& dep, const Placement& placement) {
  CsvWriter csv(out);
  csv.row("step", "site_index", "site_x", "site_y", "objective", "value");
  for (std::size_t i = 0; i < placement.occupied_sites.size(); ++i) {
    const int s = placement.occupied_sites[i];
    const Point& p = dep.sites[static_cast<std::size_t>(s)];
    csv.row(i + 1, s, p.x(), p.y(), to_string(placement.objective), placement.objective_trace[i]);
  }
}

}  // namespace relaygeo
