#include "relaygeo/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace relaygeo {

Graph::Graph(std::vector<VertexKind> kinds, std::vector<Edge> edges, RelayEdgeModel model)
    : kinds_(std::move(kinds)), edges_(std::move(edges)), model_(model) {
  const int nv = num_vertices();
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v) throw std::invalid_argument("graph: self-loop");
    if (e.u < 0 || e.v >= nv) throw std::invalid_argument("graph: edge endpoint out of range");
    if (kind(e.u) == VertexKind::vacant_site || kind(e.v) == VertexKind::vacant_site) {
      throw std::invalid_argument("graph: edge touches a vacant site");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  adjacency_.resize(kinds_.size());
  for (const auto& e : edges_) {
    adjacency_[static_cast<std::size_t>(e.u)].push_back(e.v);
    adjacency_[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool Graph::has_edge(int a, int b) const {
  const auto list = neighbors(a);
  return std::binary_search(list.begin(), list.end(), b);
}

int Graph::num_nodes() const {
  return static_cast<int>(std::count(kinds_.begin(), kinds_.end(), VertexKind::node));
}

bool Graph::is_active(int v) const {
  switch (kind(v)) {
    case VertexKind::node:
      return true;
    case VertexKind::occupied_relay:
      return model_ == RelayEdgeModel::vertex;
    case VertexKind::vacant_site:
      return false;
  }
  return false;
}

std::vector<int> Graph::active_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < num_vertices(); ++v) {
    if (is_active(v)) out.push_back(v);
  }
  return out;
}

Graph build_disk_graph(const Deployment& dep, RelayEdgeModel model) {
  std::vector<VertexKind> kinds(static_cast<std::size_t>(dep.num_vertices()), VertexKind::vacant_site);
  std::fill_n(kinds.begin(), dep.num_nodes(), VertexKind::node);
  std::vector<Edge> edges;
  for (int i = 0; i < dep.num_nodes(); ++i) {
    for (int j = i + 1; j < dep.num_nodes(); ++j) {
      if ((dep.nodes[i] - dep.nodes[j]).norm() < dep.radius) edges.push_back({i, j});
    }
  }
  return Graph(std::move(kinds), std::move(edges), model);
}

Graph occupy_relays(const Graph& g, const Deployment& dep, std::span<const int> sites) {
  if (g.num_vertices() != dep.num_vertices()) {
    throw std::invalid_argument("occupy_relays: graph and deployment disagree on vertex count");
  }
  std::vector<VertexKind> kinds(g.kinds().begin(), g.kinds().end());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const int s = sites[i];
    std::ostringstream msg;
    if (s < 0 || s >= dep.num_sites()) {
      msg << "occupy_relays: site index " << s << " out of range [0, " << dep.num_sites() << ")";
    } else if (std::find(sites.begin(), sites.begin() + static_cast<std::ptrdiff_t>(i), s) !=
               sites.begin() + static_cast<std::ptrdiff_t>(i)) {
      msg << "occupy_relays: duplicate site index " << s;
    } else if (kinds[static_cast<std::size_t>(dep.site_vertex(s))] != VertexKind::vacant_site) {
      msg << "occupy_relays: site " << s << " is already occupied";
    }
    if (msg.tellp() != 0) throw std::invalid_argument(msg.str());
    kinds[static_cast<std::size_t>(dep.site_vertex(s))] = VertexKind::occupied_relay;
  }

  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  const double r = dep.radius;
  for (const int s : sites) {
    const Point& at = dep.sites[static_cast<std::size_t>(s)];
    if (g.relay_edge_model() == RelayEdgeModel::vertex) {
      const int rv = dep.site_vertex(s);
      for (int i = 0; i < dep.num_nodes(); ++i) {
        if ((dep.nodes[i] - at).norm() < r) edges.push_back({i, rv});
      }
      for (int other = 0; other < dep.num_sites(); ++other) {
        const int ov = dep.site_vertex(other);
        if (other != s && kinds[static_cast<std::size_t>(ov)] == VertexKind::occupied_relay &&
            (dep.sites[static_cast<std::size_t>(other)] - at).norm() < r) {
          edges.push_back({std::min(rv, ov), std::max(rv, ov)});
        }
      }
    } else {
      std::vector<int> in_range;
      for (int i = 0; i < dep.num_nodes(); ++i) {
        if ((dep.nodes[i] - at).norm() < r) in_range.push_back(i);
      }
      for (std::size_t a = 0; a < in_range.size(); ++a) {
        for (std::size_t b = a + 1; b < in_range.size(); ++b) edges.push_back({in_range[a], in_range[b]});
      }
    }
  }
  return Graph(std::move(kinds), std::move(edges), g.relay_edge_model());
}

Eigen::MatrixXd incidence_matrix(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.num_vertices(), g.num_edges());
  Eigen::Index col = 0;
  for (const auto& e : g.edges()) {
    a(e.u, col) = 1.0;
    a(e.v, col) = -1.0;
    ++col;
  }
  return a;
}

Eigen::MatrixXd laplacian(const Graph& g) {
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(g.num_vertices(), g.num_vertices());
  for (const auto& e : g.edges()) {
    l(e.u, e.u) += 1.0;
    l(e.v, e.v) += 1.0;
    l(e.u, e.v) -= 1.0;
    l(e.v, e.u) -= 1.0;
  }
  return l;
}

SpdMatrix<double> regularized_laplacian(const Graph& g, double gamma) {
  if (!(gamma > 0.0)) {
    std::ostringstream msg;
    msg << "regularized_laplacian: gamma must be positive, got " << gamma;
    throw std::invalid_argument(msg.str());
  }
  Eigen::MatrixXd s = laplacian(g);
  s.diagonal().array() += gamma;
  return SpdMatrix<double>(std::move(s));
}

Eigen::MatrixXd restricted_laplacian(const Graph& g, std::span<const int> vertices) {
  const auto k = static_cast<Eigen::Index>(vertices.size());
  std::vector<int> position(static_cast<std::size_t>(g.num_vertices()), -1);
  for (Eigen::Index i = 0; i < k; ++i) position[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(k, k);
  for (const auto& e : g.edges()) {
    const int a = position[static_cast<std::size_t>(e.u)];
    const int b = position[static_cast<std::size_t>(e.v)];
    if (a < 0 || b < 0) continue;
    l(a, a) += 1.0;
    l(b, b) += 1.0;
    l(a, b) -= 1.0;
    l(b, a) -= 1.0;
  }
  return l;
}

double algebraic_connectivity(const Graph& g, bool restrict_to_active) {
  std::vector<int> vertices;
  if (restrict_to_active) {
    vertices = g.active_vertices();
  } else {
    vertices.resize(static_cast<std::size_t>(g.num_vertices()));
    for (int v = 0; v < g.num_vertices(); ++v) vertices[static_cast<std::size_t>(v)] = v;
  }
  if (vertices.size() < 2) {
    throw std::invalid_argument("algebraic_connectivity: fewer than 2 vertices");
  }
  // Disconnected graphs have a repeated zero eigenvalue that the solver
  // returns as +-1e-16 noise; report an exact zero instead.
  if (count_components(g, vertices) > 1) return 0.0;
  const Eigen::MatrixXd l = restricted_laplacian(g, vertices);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(l, Eigen::EigenvaluesOnly);
  return std::max(0.0, eig.eigenvalues()[1]);
}

int count_components(const Graph& g, std::span<const int> vertices) {
  std::vector<char> member(static_cast<std::size_t>(g.num_vertices()), 0);
  for (const int v : vertices) member[static_cast<std::size_t>(v)] = 1;
  std::vector<char> seen(member.size(), 0);
  int components = 0;
  std::queue<int> frontier;
  for (const int start : vertices) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    ++components;
    seen[static_cast<std::size_t>(start)] = 1;
    frontier.push(start);
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      for (const int w : g.neighbors(v)) {
        if (member[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          frontier.push(w);
        }
      }
    }
  }
  return components;
}

}  // namespace relaygeo
