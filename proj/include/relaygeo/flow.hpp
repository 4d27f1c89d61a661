#pragma once

#include <vector>

#include "relaygeo/graph.hpp"

namespace relaygeo {

struct FlowResult {
  int value = 0;
  // Edge-disjoint s -> d vertex paths obtained by decomposing the final flow.
  std::vector<std::vector<int>> augmenting_paths;
};

/// Which destinations each source is paired with when averaging.
enum class FlowDestination : std::uint8_t {
  all,        // every other node
  next_node,  // the single node (s + 1) mod n
};

/// Unit-capacity residual network for one graph. Each undirected edge is a
/// pair of antiparallel unit arcs that are each other's reverse, so an edge
/// carries at most one unit in total. Reusable across (s, d) queries.
class FlowNetwork {
 public:
  explicit FlowNetwork(const Graph& g);

  /// Edmonds-Karp: repeated BFS-shortest augmenting paths.
  int max_flow_value(int source, int sink);
  FlowResult max_flow(int source, int sink);

 private:
  bool augment(int source, int sink);
  std::vector<std::vector<int>> decompose(int source, int sink) const;

  int num_vertices_;
  std::vector<int> arc_head_;          // head vertex of arc a; arc a ^ 1 is its reverse
  std::vector<std::vector<int>> out_;  // arcs leaving each vertex, by ascending head
  std::vector<int> residual_;
  std::vector<int> parent_arc_;
  std::vector<int> queue_;
};

/// Throws std::invalid_argument when s == d or either endpoint is inactive.
FlowResult max_flow(const Graph& g, int source, int sink);

/// Network-average maximum flow: mean over sources s of the mean flow from s
/// to its destinations. Only node vertices act as sources or sinks.
double avg_max_flow(const Graph& g, FlowDestination destinations = FlowDestination::all);

}  // namespace relaygeo
