#include "relaygeo/flow.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace relaygeo {

FlowNetwork::FlowNetwork(const Graph& g)
    : num_vertices_(g.num_vertices()),
      out_(static_cast<std::size_t>(g.num_vertices())),
      parent_arc_(static_cast<std::size_t>(g.num_vertices())) {
  arc_head_.reserve(2 * static_cast<std::size_t>(g.num_edges()));
  for (const auto& e : g.edges()) {
    const int forward = static_cast<int>(arc_head_.size());
    arc_head_.push_back(e.v);
    arc_head_.push_back(e.u);
    out_[static_cast<std::size_t>(e.u)].push_back(forward);
    out_[static_cast<std::size_t>(e.v)].push_back(forward + 1);
  }
  for (auto& arcs : out_) {
    std::sort(arcs.begin(), arcs.end(), [this](int a, int b) { return arc_head_[a] < arc_head_[b]; });
  }
  residual_.assign(arc_head_.size(), 1);
  queue_.reserve(static_cast<std::size_t>(num_vertices_));
}

bool FlowNetwork::augment(int source, int sink) {
  std::fill(parent_arc_.begin(), parent_arc_.end(), -1);
  queue_.clear();
  queue_.push_back(source);
  parent_arc_[static_cast<std::size_t>(source)] = static_cast<int>(arc_head_.size());  // sentinel
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const int v = queue_[head];
    for (const int a : out_[static_cast<std::size_t>(v)]) {
      const int w = arc_head_[static_cast<std::size_t>(a)];
      if (residual_[static_cast<std::size_t>(a)] == 0 || parent_arc_[static_cast<std::size_t>(w)] != -1) continue;
      parent_arc_[static_cast<std::size_t>(w)] = a;
      if (w == sink) {
        for (int x = sink; x != source;) {
          const int arc = parent_arc_[static_cast<std::size_t>(x)];
          --residual_[static_cast<std::size_t>(arc)];
          ++residual_[static_cast<std::size_t>(arc ^ 1)];
          x = arc_head_[static_cast<std::size_t>(arc ^ 1)];
        }
        return true;
      }
      queue_.push_back(w);
    }
  }
  return false;
}

int FlowNetwork::max_flow_value(int source, int sink) {
  std::fill(residual_.begin(), residual_.end(), 1);
  int value = 0;
  while (augment(source, sink)) ++value;
  return value;
}

std::vector<std::vector<int>> FlowNetwork::decompose(int source, int sink) const {
  // Arc a carries flow when its residual dropped to 0 (its twin then holds 2).
  std::vector<char> used(arc_head_.size(), 0);
  std::vector<std::vector<int>> paths;
  for (;;) {
    std::vector<int> path{source};
    std::vector<int> position(static_cast<std::size_t>(num_vertices_), -1);
    position[static_cast<std::size_t>(source)] = 0;
    std::vector<int> arcs;
    int v = source;
    while (v != sink) {
      int next_arc = -1;
      for (const int a : out_[static_cast<std::size_t>(v)]) {
        if (residual_[static_cast<std::size_t>(a)] == 0 && !used[static_cast<std::size_t>(a)]) {
          next_arc = a;
          break;
        }
      }
      if (next_arc < 0) break;
      used[static_cast<std::size_t>(next_arc)] = 1;
      const int w = arc_head_[static_cast<std::size_t>(next_arc)];
      const int seen_at = position[static_cast<std::size_t>(w)];
      if (seen_at >= 0) {
        // Flow cycle through w: drop it from the walk.
        for (std::size_t k = static_cast<std::size_t>(seen_at) + 1; k < path.size(); ++k) {
          position[static_cast<std::size_t>(path[k])] = -1;
        }
        path.resize(static_cast<std::size_t>(seen_at) + 1);
      } else {
        position[static_cast<std::size_t>(w)] = static_cast<int>(path.size());
        path.push_back(w);
      }
      v = w;
    }
    if (v != sink) break;
    paths.push_back(std::move(path));
  }
  return paths;
}

FlowResult FlowNetwork::max_flow(int source, int sink) {
  FlowResult result;
  result.value = max_flow_value(source, sink);
  result.augmenting_paths = decompose(source, sink);
  return result;
}

FlowResult max_flow(const Graph& g, int source, int sink) {
  std::ostringstream msg;
  if (source < 0 || source >= g.num_vertices() || sink < 0 || sink >= g.num_vertices()) {
    msg << "max_flow: endpoint out of range";
  } else if (source == sink) {
    msg << "max_flow: source and sink coincide (" << source << ")";
  } else if (!g.is_active(source) || !g.is_active(sink)) {
    msg << "max_flow: endpoint " << (g.is_active(source) ? sink : source) << " is not an active vertex";
  }
  if (msg.tellp() != 0) throw std::invalid_argument(msg.str());
  FlowNetwork network(g);
  return network.max_flow(source, sink);
}

double avg_max_flow(const Graph& g, FlowDestination destinations) {
  std::vector<int> nodes;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.kind(v) == VertexKind::node) nodes.push_back(v);
  }
  const auto n = static_cast<int>(nodes.size());
  if (n < 2) return 0.0;
  FlowNetwork network(g);
  double total = 0.0;
  if (destinations == FlowDestination::next_node) {
    for (int i = 0; i < n; ++i) total += network.max_flow_value(nodes[i], nodes[(i + 1) % n]);
    return total / n;
  }
  // Undirected unit capacities make f(s, d) = f(d, s), so each unordered
  // pair is solved once and counted for both orders.
  std::vector<double> per_source(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int f = network.max_flow_value(nodes[i], nodes[j]);
      per_source[static_cast<std::size_t>(i)] += f;
      per_source[static_cast<std::size_t>(j)] += f;
    }
  }
  for (const double s : per_source) total += s / (n - 1);
  return total / n;
}

}  // namespace relaygeo
