#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "relaygeo/deployment.hpp"
#include "relaygeo/flow.hpp"
#include "relaygeo/graph.hpp"
#include "relaygeo/spd.hpp"

namespace relaygeo {

enum class Objective : std::uint8_t { lem, lambda2, maxflow };

std::string_view to_string(Objective o);
std::optional<Objective> parse_objective(std::string_view name);

// Which nodes a region sees in distributed placement. Candidate sites are
// always the region's own.
//   inside:    only nodes lying in the region
//   reachable: nodes within radio range of at least one of the region's sites
//   all:       every node (regions only split the candidate sites)
enum class RegionalView : std::uint8_t { inside, reachable, all };

std::string_view to_string(RegionalView v);
std::optional<RegionalView> parse_regional_view(std::string_view name);

struct PlacementOptions {
  double gamma = 0.5;
  RelayEdgeModel edge_model = RelayEdgeModel::bridge;
  RegionalView regional_view = RegionalView::all;
  FlowDestination destinations = FlowDestination::all;
  std::size_t exhaustive_budget = 100000;
};

struct Placement {
  std::vector<int> occupied_sites;
  Objective objective = Objective::lem;
  std::vector<double> objective_trace;
  // Distributed placement only: regions that held no candidate site.
  std::vector<int> empty_regions;
};

/// Squared LEM between the regularized Laplacian of `g_with_relays` and the
/// baseline. Throws std::invalid_argument on dimension mismatch.
double objective_lem(const Graph& g_with_relays, const SpdMatrix<double>& baseline, double gamma);

/// Scores candidate graphs under one objective. The LEM baseline is the
/// relay-free graph the scorer was created with.
class ObjectiveEvaluator {
 public:
  ObjectiveEvaluator(Objective objective, const Graph& baseline, const PlacementOptions& options);

  double operator()(const Graph& candidate) const;
  Objective objective() const { return objective_; }

 private:
  Objective objective_;
  PlacementOptions options_;
  std::optional<LogMatrix<double>> baseline_log_;
};

/// Adds one relay at a time at the site that maximises the objective; ties go
/// to the lowest site index. Requires 1 <= K < Z.
Placement greedy_place(const Deployment& dep, Objective objective, int k, const PlacementOptions& options = {});

/// Scores every K-subset of sites (lexicographic order, first maximum kept).
/// Throws std::length_error when C(Z, K) exceeds options.exhaustive_budget.
Placement exhaustive_place(const Deployment& dep, Objective objective, int k,
                           const PlacementOptions& options = {});

/// Splits the area into K equal rectangles; each places one LEM relay among
/// its own sites, seeing the nodes selected by options.regional_view.
Placement distributed_place(const Deployment& dep, int k, const PlacementOptions& options = {});

/// rows x cols split with rows * cols == k, as square as possible (rows <= cols).
std::pair<int, int> region_grid(int k);

/// Graph with the placement's relays occupied.
Graph placed_graph(const Deployment& dep, std::span<const int> sites, RelayEdgeModel model = RelayEdgeModel::vertex);

/// CSV `step,site_index,site_x,site_y,objective,value`.
void write_placement_csv(std::ostream& out, const Deployment& dep, const Placement& placement);

}  // namespace relaygeo
