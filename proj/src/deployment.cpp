#include "relaygeo/deployment.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace relaygeo {

namespace {

bool inside(const Point& p, double width, double height) {
  return p.x() >= 0.0 && p.x() <= width && p.y() >= 0.0 && p.y() <= height;
}

}  // namespace

void validate(const Deployment& dep) {
  std::ostringstream msg;
  if (dep.num_nodes() < 2) {
    msg << "deployment needs at least 2 nodes, got " << dep.num_nodes();
  } else if (dep.num_sites() < 1) {
    msg << "deployment needs at least 1 candidate site";
  } else if (!(dep.radius > 0.0)) {
    msg << "disk radius must be positive, got " << dep.radius;
  } else if (!(dep.width > 0.0) || !(dep.height > 0.0)) {
    msg << "area must be positive, got " << dep.width << "x" << dep.height;
  } else {
    for (int i = 0; i < dep.num_nodes(); ++i) {
      if (!inside(dep.nodes[i], dep.width, dep.height)) {
        msg << "node " << i << " lies outside the area";
        break;
      }
    }
    for (int i = 0; i < dep.num_sites() && msg.tellp() == 0; ++i) {
      if (!inside(dep.sites[i], dep.width, dep.height)) {
        msg << "site " << i << " lies outside the area";
      }
    }
  }
  if (msg.tellp() != 0) throw std::invalid_argument(msg.str());
}

std::vector<Point> grid_sites(double width, double height, int cols, int rows) {
  if (cols < 1 || rows < 1) throw std::invalid_argument("site grid needs at least one row and column");
  std::vector<Point> sites;
  sites.reserve(static_cast<std::size_t>(cols * rows));
  const double dx = width / cols;
  const double dy = height / rows;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) sites.emplace_back((c + 0.5) * dx, (r + 0.5) * dy);
  }
  return sites;
}

Deployment sample_deployment(Rng& rng, int num_nodes, double width, double height, double radius,
                             int site_cols, int site_rows) {
  Deployment dep;
  dep.radius = radius;
  dep.width = width;
  dep.height = height;
  dep.nodes.reserve(static_cast<std::size_t>(num_nodes));
  for (int i = 0; i < num_nodes; ++i) {
    const double x = rng.uniform(0.0, width);
    const double y = rng.uniform(0.0, height);
    dep.nodes.emplace_back(x, y);
  }
  dep.sites = grid_sites(width, height, site_cols, site_rows);
  return dep;
}

void write_deployment(std::ostream& out, const Deployment& dep) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << dep.num_nodes() << ' ' << dep.num_sites() << ' ' << dep.radius << ' ' << dep.width << ' '
      << dep.height << '\n';
  for (const auto& p : dep.nodes) out << p.x() << ' ' << p.y() << '\n';
  for (const auto& p : dep.sites) out << p.x() << ' ' << p.y() << '\n';
  out.precision(old_precision);
}

Deployment read_deployment(std::istream& in) {
  Deployment dep;
  long n = 0;
  long z = 0;
  if (!(in >> n >> z >> dep.radius >> dep.width >> dep.height)) {
    throw std::invalid_argument("deployment: malformed header, expected `n Z R width height`");
  }
  if (n < 0 || z < 0) throw std::invalid_argument("deployment: negative counts in header");
  auto read_points = [&in](long count, std::vector<Point>& into, const char* what) {
    into.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
      double x = 0.0;
      double y = 0.0;
      if (!(in >> x >> y)) {
        std::ostringstream msg;
        msg << "deployment: expected " << count << " " << what << " lines, stopped at " << i;
        throw std::invalid_argument(msg.str());
      }
      into.emplace_back(x, y);
    }
  };
  read_points(n, dep.nodes, "node");
  read_points(z, dep.sites, "site");
  validate(dep);
  return dep;
}

}  // namespace relaygeo
