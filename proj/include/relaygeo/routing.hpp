#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "relaygeo/deployment.hpp"
#include "relaygeo/graph.hpp"
#include "relaygeo/spd.hpp"

namespace relaygeo {

/// Nearest-relay grouping of nodes. Relays are referred to by their position
/// in the relay list handed to assign_clusters.
struct Clustering {
  std::vector<int> assignment;            // per node
  std::vector<std::vector<int>> members;  // per relay, ascending node ids
};

/// Every node joins its Euclidean-nearest relay, ties to the lower index.
/// Throws std::invalid_argument when no relay is given.
Clustering assign_clusters(const Deployment& dep, std::span<const int> relay_sites);

/// Relay-to-relay path. Endpoints are site indices; `path` holds vertex ids.
struct Route {
  int relay_a = -1;
  int relay_b = -1;
  std::vector<int> path;
  std::vector<Edge> edges;
  // Regularized Laplacian over the full vertex set, using this route's edges only.
  SpdMatrix<double> laplacian;

  int hops() const { return static_cast<int>(edges.size()); }
};

/// Minimum-hop path between two occupied relays. Among equal-length paths,
/// each vertex takes the lowest-index predecessor. std::nullopt when the
/// relays are disconnected.
std::optional<Route> shortest_route(const Graph& g, const Deployment& dep, int site_a, int site_b, double gamma);

/// Shortest routes for every relay pair i < j, plus the number of
/// disconnected pairs.
struct RouteSet {
  std::vector<Route> routes;
  int unreachable = 0;
};
RouteSet all_relay_routes(const Graph& g, const Deployment& dep, std::span<const int> relay_sites, double gamma);

struct ParallelRoutes {
  Route first;
  Route second;
  double distance = 0.0;
};

/// Unordered pair of routes with the largest squared LEM between their
/// Laplacians; ties resolved by the lexicographically smallest endpoint pair.
/// Throws std::invalid_argument for fewer than two routes.
ParallelRoutes select_parallel_routes(std::span<const Route> routes);

struct Overlap {
  int shared_nodes = 0;  // excluding vertices that are endpoints of both routes
  int shared_edges = 0;
  int shared_vertices_all = 0;
};

Overlap overlap_stats(const Route& a, const Route& b);

/// CSV `relay_a,relay_b,hops,path_vertices` with ';'-separated vertices.
void write_routes_csv(std::ostream& out, std::span<const Route> routes);

}  // namespace relaygeo
