#include <doctest.h>

#include <sstream>

#include "relaygeo/deployment.hpp"

using namespace relaygeo;

TEST_CASE("grid sites are cell centres") {
  const auto sites = grid_sites(6.0, 6.0, 4, 4);
  REQUIRE(sites.size() == 16);
  CHECK(sites[0].x() == doctest::Approx(0.75));
  CHECK(sites[0].y() == doctest::Approx(0.75));
  CHECK(sites[5].x() == doctest::Approx(2.25));
  CHECK(sites[15].x() == doctest::Approx(5.25));
  CHECK(sites[15].y() == doctest::Approx(5.25));
}

TEST_CASE("deployment validation") {
  Deployment dep;
  dep.nodes = {{1, 1}, {2, 2}};
  dep.sites = {{3, 3}};
  CHECK_NOTHROW(validate(dep));

  SUBCASE("too few nodes") {
    dep.nodes.pop_back();
    CHECK_THROWS_AS(validate(dep), std::invalid_argument);
  }
  SUBCASE("no sites") {
    dep.sites.clear();
    CHECK_THROWS_AS(validate(dep), std::invalid_argument);
  }
  SUBCASE("non-positive radius") {
    dep.radius = 0.0;
    CHECK_THROWS_AS(validate(dep), std::invalid_argument);
  }
  SUBCASE("point outside area") {
    dep.sites[0] = {7.0, 1.0};
    CHECK_THROWS_WITH_AS(validate(dep), "site 0 lies outside the area", std::invalid_argument);
  }
}

TEST_CASE("deployment text round trip within 1e-9") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const Deployment dep = sample_deployment(rng, 20, 6.0, 6.0, 2.0, 4, 4);
    std::stringstream io;
    write_deployment(io, dep);
    const Deployment back = read_deployment(io);
    REQUIRE(back.num_nodes() == dep.num_nodes());
    REQUIRE(back.num_sites() == dep.num_sites());
    CHECK(back.radius == doctest::Approx(dep.radius).epsilon(1e-12));
    for (int i = 0; i < dep.num_nodes(); ++i) CHECK((back.nodes[i] - dep.nodes[i]).cwiseAbs().maxCoeff() <= 1e-9);
    for (int i = 0; i < dep.num_sites(); ++i) CHECK((back.sites[i] - dep.sites[i]).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("deployment header format") {
  Deployment dep;
  dep.nodes = {{1, 1}, {2, 2}};
  dep.sites = {{3, 3}};
  std::ostringstream out;
  write_deployment(out, dep);
  CHECK(out.str() == "2 1 2 6 6\n1 1\n2 2\n3 3\n");
}

TEST_CASE("truncated deployment file is rejected") {
  std::istringstream in("3 1 2 6 6\n1 1\n2 2\n");
  CHECK_THROWS_AS(read_deployment(in), std::invalid_argument);
}

TEST_CASE("sampled nodes stay inside the area and are seed-determined") {
  Rng a(42, 3);
  Rng b(42, 3);
  const Deployment da = sample_deployment(a, 20, 6.0, 6.0, 2.0, 4, 4);
  const Deployment db = sample_deployment(b, 20, 6.0, 6.0, 2.0, 4, 4);
  CHECK_NOTHROW(validate(da));
  for (int i = 0; i < 20; ++i) CHECK(da.nodes[i] == db.nodes[i]);
}
