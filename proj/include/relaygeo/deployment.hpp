#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "relaygeo/random.hpp"

namespace relaygeo {

using Point = Eigen::Vector2d;

/// Static scene the planner works on: user nodes, candidate relay sites and
/// the disk-model connection radius, all inside a width x height area.
struct Deployment {
  std::vector<Point> nodes;
  std::vector<Point> sites;
  double radius = 2.0;
  double width = 6.0;
  double height = 6.0;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_sites() const { return static_cast<int>(sites.size()); }
  int num_vertices() const { return num_nodes() + num_sites(); }

  // Vertex id of candidate site `site`; nodes occupy ids [0, n).
  int site_vertex(int site) const { return num_nodes() + site; }
};

// Throws std::invalid_argument when n < 2, Z < 1, R <= 0 or a point lies
// outside the area.
void validate(const Deployment& dep);

/// Regular cols x rows lattice of cell centres covering the area.
std::vector<Point> grid_sites(double width, double height, int cols, int rows);

/// i.i.d. uniform node positions; sites on the given lattice.
Deployment sample_deployment(Rng& rng, int num_nodes, double width, double height, double radius,
                             int site_cols, int site_rows);

// Text format: header `n Z R width height`, then n node lines `x y`, then Z
// site lines `x y`.
void write_deployment(std::ostream& out, const Deployment& dep);
Deployment read_deployment(std::istream& in);

}  // namespace relaygeo
