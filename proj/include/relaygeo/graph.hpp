#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "relaygeo/deployment.hpp"
#include "relaygeo/spd.hpp"

namespace relaygeo {

enum class VertexKind : std::uint8_t { node, occupied_relay, vacant_site };

/// How an occupied relay enters the graph.
///  vertex: the relay is a vertex joined to every node and relay within R.
///  bridge: the relay vertex stays edgeless and instead every node pair that
///          is jointly within R of the relay gets a direct edge.
enum class RelayEdgeModel : std::uint8_t { vertex, bridge };

struct Edge {
  int u;
  int v;  // u < v

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph over a fixed vertex set of n nodes followed by Z
/// candidate sites. Immutable once built.
class Graph {
 public:
  Graph(std::vector<VertexKind> kinds, std::vector<Edge> edges,
        RelayEdgeModel model = RelayEdgeModel::vertex);

  int num_vertices() const { return static_cast<int>(kinds_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const VertexKind> kinds() const { return kinds_; }
  VertexKind kind(int v) const { return kinds_[static_cast<std::size_t>(v)]; }
  RelayEdgeModel relay_edge_model() const { return model_; }

  // Ascending neighbour list.
  std::span<const int> neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
  bool has_edge(int a, int b) const;

  int num_nodes() const;
  bool is_active(int v) const;
  /// Vertices that take part in the network: nodes plus occupied relays
  /// (nodes only under the bridge model, where relays carry no edges).
  std::vector<int> active_vertices() const;

 private:
  std::vector<VertexKind> kinds_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  RelayEdgeModel model_;
};

/// Node-node disk graph; every candidate site is a vacant isolated vertex.
Graph build_disk_graph(const Deployment& dep, RelayEdgeModel model = RelayEdgeModel::vertex);

/// Returns a copy of `g` with the listed sites turned into relays. Throws on
/// duplicate, out-of-range or already occupied sites.
Graph occupy_relays(const Graph& g, const Deployment& dep, std::span<const int> sites);

/// Signed incidence matrix, one column per edge (+1 at u, -1 at v).
Eigen::MatrixXd incidence_matrix(const Graph& g);

Eigen::MatrixXd laplacian(const Graph& g);

/// L + gamma I. Throws std::invalid_argument for gamma <= 0.
SpdMatrix<double> regularized_laplacian(const Graph& g, double gamma);

/// Laplacian restricted to the listed vertices (rows and columns), with the
/// degrees counted inside the restriction.
Eigen::MatrixXd restricted_laplacian(const Graph& g, std::span<const int> vertices);

/// Second-smallest Laplacian eigenvalue. With `restrict_to_active` the
/// spectrum is taken over active vertices only. Throws when fewer than two
/// vertices remain.
double algebraic_connectivity(const Graph& g, bool restrict_to_active = true);

/// Number of connected components among `vertices` (breadth-first search).
int count_components(const Graph& g, std::span<const int> vertices);

}  // namespace relaygeo
