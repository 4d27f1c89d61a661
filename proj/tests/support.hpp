#pragma once

// Independent oracles and random generators shared by the test suites. None
// of these reuse the library code paths they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "relaygeo/graph.hpp"
#include "relaygeo/random.hpp"

namespace relaygeo::testing {

inline Graph graph_of(int vertices, std::vector<Edge> edges) {
  return Graph(std::vector<VertexKind>(static_cast<std::size_t>(vertices), VertexKind::node), std::move(edges));
}

inline Graph random_graph(Rng& rng, int vertices, double p) {
  std::vector<Edge> edges;
  for (int i = 0; i < vertices; ++i) {
    for (int j = i + 1; j < vertices; ++j) {
      if (rng.uniform() < p) edges.push_back({i, j});
    }
  }
  return graph_of(vertices, std::move(edges));
}

// Random SPD matrix U diag(lambda) U^T with log-uniform spectrum in
// [1, cond]; U from a QR of a Gaussian matrix.
inline Eigen::MatrixXd random_spd(Rng& rng, int n, double cond = 100.0) {
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  }
  const Eigen::MatrixXd u = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
  Eigen::VectorXd lambda(n);
  for (int i = 0; i < n; ++i) lambda[i] = std::exp(rng.uniform() * std::log(cond)) * (0.5 + rng.uniform());
  Eigen::MatrixXd s = u * lambda.asDiagonal() * u.transpose();
  return (s + s.transpose()) / 2.0;
}

inline Eigen::MatrixXcd random_hpd(Rng& rng, int n) {
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  }
  Eigen::MatrixXcd s = g * g.adjoint();
  s.diagonal().array() += 0.1;
  return (s + s.adjoint()) / 2.0;
}

inline Eigen::MatrixXd random_orthogonal(Rng& rng, int n) {
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  }
  return Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
}

// Minimum s-t cut by enumerating every vertex bipartition with s on one side.
inline int brute_force_min_cut(const Graph& g, int s, int t) {
  const int n = g.num_vertices();
  int best = std::numeric_limits<int>::max();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!(mask >> s & 1u) || (mask >> t & 1u)) continue;
    int cut = 0;
    for (const auto& e : g.edges()) cut += ((mask >> e.u & 1u) != (mask >> e.v & 1u)) ? 1 : 0;
    best = std::min(best, cut);
  }
  return best;
}

// Hop distances by repeated relaxation (Bellman-Ford on unit weights).
inline std::vector<int> relaxation_hops(const Graph& g, int source) {
  const int n = g.num_vertices();
  std::vector<int> d(static_cast<std::size_t>(n), std::numeric_limits<int>::max() / 2);
  d[static_cast<std::size_t>(source)] = 0;
  for (int round = 0; round < n; ++round) {
    for (const auto& e : g.edges()) {
      d[static_cast<std::size_t>(e.v)] = std::min(d[static_cast<std::size_t>(e.v)], d[static_cast<std::size_t>(e.u)] + 1);
      d[static_cast<std::size_t>(e.u)] = std::min(d[static_cast<std::size_t>(e.u)], d[static_cast<std::size_t>(e.v)] + 1);
    }
  }
  return d;
}

// Log of a symmetric matrix through the generic (non-symmetric) eigensolver,
// kept independent from the SelfAdjointEigenSolver path under test.
inline Eigen::MatrixXd log_via_general_eigensolver(const Eigen::MatrixXd& s) {
  Eigen::EigenSolver<Eigen::MatrixXd> eig(s);
  const Eigen::MatrixXcd v = eig.eigenvectors();
  const Eigen::VectorXcd logs = eig.eigenvalues().array().log();
  return (v * logs.asDiagonal() * v.inverse()).real();
}

}  // namespace relaygeo::testing
