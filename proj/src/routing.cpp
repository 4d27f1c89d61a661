#include "relaygeo/routing.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "relaygeo/csv.hpp"

namespace relaygeo {

Clustering assign_clusters(const Deployment& dep, std::span<const int> relay_sites) {
  if (relay_sites.empty()) throw std::invalid_argument("assign_clusters: no relays");
  Clustering c;
  c.assignment.resize(static_cast<std::size_t>(dep.num_nodes()));
  c.members.resize(relay_sites.size());
  for (int i = 0; i < dep.num_nodes(); ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < relay_sites.size(); ++r) {
      const double d = (dep.nodes[static_cast<std::size_t>(i)] - dep.sites[static_cast<std::size_t>(relay_sites[r])]).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(r);
      }
    }
    c.assignment[static_cast<std::size_t>(i)] = best;
    c.members[static_cast<std::size_t>(best)].push_back(i);
  }
  return c;
}

namespace {

SpdMatrix<double> route_laplacian(int num_vertices, std::span<const Edge> edges, double gamma) {
  std::vector<VertexKind> kinds(static_cast<std::size_t>(num_vertices), VertexKind::node);
  return regularized_laplacian(Graph(std::move(kinds), {edges.begin(), edges.end()}), gamma);
}

}  // namespace

std::optional<Route> shortest_route(const Graph& g, const Deployment& dep, int site_a, int site_b, double gamma) {
  const int a = dep.site_vertex(site_a);
  const int b = dep.site_vertex(site_b);
  if (g.kind(a) != VertexKind::occupied_relay || g.kind(b) != VertexKind::occupied_relay) {
    throw std::invalid_argument("shortest_route: both endpoints must be occupied relays");
  }
  if (a == b) throw std::invalid_argument("shortest_route: endpoints coincide");

  // Unit weights: breadth-first layers give the Dijkstra distances.
  std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), -1);
  std::vector<int> frontier{a};
  dist[static_cast<std::size_t>(a)] = 0;
  for (std::size_t head = 0; head < frontier.size() && dist[static_cast<std::size_t>(b)] < 0; ++head) {
    const int v = frontier[head];
    for (const int w : g.neighbors(v)) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        frontier.push_back(w);
      }
    }
  }
  if (dist[static_cast<std::size_t>(b)] < 0) return std::nullopt;

  std::vector<int> path{b};
  for (int v = b; v != a;) {
    int pred = -1;
    for (const int w : g.neighbors(v)) {  // ascending, so the first match is the lowest index
      if (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(v)] - 1) {
        pred = w;
        break;
      }
    }
    path.push_back(pred);
    v = pred;
  }
  std::reverse(path.begin(), path.end());

  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    edges.push_back({std::min(path[i], path[i + 1]), std::max(path[i], path[i + 1])});
  }
  SpdMatrix<double> lap = route_laplacian(g.num_vertices(), edges, gamma);
  return Route{site_a, site_b, std::move(path), std::move(edges), std::move(lap)};
}

RouteSet all_relay_routes(const Graph& g, const Deployment& dep, std::span<const int> relay_sites, double gamma) {
  RouteSet out;
  for (std::size_t i = 0; i < relay_sites.size(); ++i) {
    for (std::size_t j = i + 1; j < relay_sites.size(); ++j) {
      auto route = shortest_route(g, dep, relay_sites[i], relay_sites[j], gamma);
      if (route) {
        out.routes.push_back(std::move(*route));
      } else {
        ++out.unreachable;
      }
    }
  }
  return out;
}

ParallelRoutes select_parallel_routes(std::span<const Route> routes) {
  if (routes.size() < 2) throw std::invalid_argument("select_parallel_routes: need at least two routes");
  const Eigen::Index dim = routes.front().laplacian.dim();
  for (const auto& r : routes) {
    if (r.laplacian.dim() != dim) throw std::invalid_argument("select_parallel_routes: Laplacian dimension mismatch");
  }

  // Canonical order so the result does not depend on the input order.
  std::vector<std::size_t> order(routes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto key = [&](std::size_t i) {
    const auto& r = routes[i];
    return std::pair{std::min(r.relay_a, r.relay_b), std::max(r.relay_a, r.relay_b)};
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (key(x) != key(y)) return key(x) < key(y);
    return routes[x].path < routes[y].path;
  });

  std::vector<LogMatrix<double>> logs;
  logs.reserve(routes.size());
  for (const std::size_t i : order) logs.push_back(matrix_log(routes[i].laplacian));

  std::size_t best_i = 0;
  std::size_t best_j = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const double d = lem_distance(logs[i], logs[j]);
      if (d > best) {
        best = d;
        best_i = i;
        best_j = j;
      }
    }
  }
  return ParallelRoutes{routes[order[best_i]], routes[order[best_j]], best};
}

Overlap overlap_stats(const Route& a, const Route& b) {
  Overlap o;
  auto endpoint_of = [](const Route& r, int v) { return v == r.path.front() || v == r.path.back(); };
  for (const int v : a.path) {
    if (std::find(b.path.begin(), b.path.end(), v) == b.path.end()) continue;
    ++o.shared_vertices_all;
    if (!(endpoint_of(a, v) && endpoint_of(b, v))) ++o.shared_nodes;
  }
  for (const auto& e : a.edges) {
    if (std::find(b.edges.begin(), b.edges.end(), e) != b.edges.end()) ++o.shared_edges;
  }
  return o;
}

void write_routes_csv(std::ostream& out, std::span<const Route> routes) {
  CsvWriter csv(out);
  csv.row("relay_a", "relay_b", "hops", "path_vertices");
  for (const auto& r : routes) {
    std::string path;
    for (std::size_t i = 0; i < r.path.size(); ++i) {
      if (i) path += ';';
      path += std::to_string(r.path[i]);
    }
    csv.row(r.relay_a, r.relay_b, r.hops(), path);
  }
}

}  // namespace relaygeo
