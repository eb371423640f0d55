#include <doctest.h>

#include <numbers>

#include "lawson/lattice.hpp"

using namespace lawson;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("unsupported lattice parameters are rejected") {
  CHECK_THROWS_AS(Lattice({3, 1}), Error);
  CHECK_THROWS_AS(Lattice({2, 2}), Error);
  CHECK_NOTHROW(Lattice({3, 2}));
}

TEST_CASE("lattice points lie on C and C-perp at the right angles") {
  const Lattice lat({3, 2});
  CHECK(lat.t_lower(0).distance(PointS3::lower(0.0)) < 1e-15);
  CHECK(lat.t_lower(1).distance(PointS3::lower(kPi / 6)) < 1e-15);
  CHECK(lat.t_upper(1).distance(PointS3::upper(kPi / 4)) < 1e-15);
  CHECK(lat.t_lower(6).distance(lat.t_lower(0).antipode()) < 1e-15);
  CHECK(lat.quad_circles().size() == 6);
  CHECK(lat.axis_circles().size() == 6);
  CHECK(lat.spheres().size() == 5);
}

TEST_CASE("each family has 4km cells") {
  for (auto [m, k] : {std::pair{3, 2}, {4, 3}, {5, 2}}) {
    const Lattice lat({m, k});
    for (Family f : {Family::Omega, Family::OmegaHalf}) CHECK(lat.cells(f).size() == static_cast<std::size_t>(4 * m * k));
    CHECK(lat.cells(Family::OmegaEven).size() == static_cast<std::size_t>(2 * m * k));
    CHECK(lat.cells(Family::OmegaOdd).size() == static_cast<std::size_t>(2 * m * k));
  }
}

TEST_CASE("cell edge lengths and dihedral angles") {
  for (auto [m, k] : {std::pair{3, 2}, {4, 2}, {3, 3}, {4, 3}}) {
    const Lattice lat({m, k});
    const auto r = cell_metrics_check(lat, 1e-12);
    INFO(r.witness);
    CHECK(r.pass);
    const auto t = lat.tetra({Family::Omega, 0, 0});
    CHECK(t.edge_length(0) == doctest::Approx(kPi / m));
    CHECK(t.edge_length(5) == doctest::Approx(kPi / k));
    CHECK(t.dihedral_angle(0) == doctest::Approx(kPi / k));
    CHECK(t.dihedral_angle(5) == doctest::Approx(kPi / m));
  }
}

TEST_CASE("cells tile the sphere once") {
  const Lattice lat({3, 2});
  Rng rng(11);
  for (Family f : {Family::Omega, Family::OmegaHalf}) {
    const auto r = coverage_check(lat, f, 20000, rng, 1e-9);
    INFO(r.witness);
    CHECK(r.pass);
  }
  CHECK(even_odd_partition_check(lat).pass);
  CHECK(circle_union_check(lat, 2048, rng).pass);
}

TEST_CASE("locate and canonical indices") {
  const Lattice lat({3, 2});
  const auto c = lat.tetra({Family::Omega, 0, 0}).centroid();
  const auto found = lat.locate(c, Family::Omega);
  REQUIRE(found.size() == 1);
  CHECK(found[0] == CellIndex{Family::Omega, 0, 0});
  CHECK_THROWS_AS(lat.canonical({Family::Omega, 1, 0}), Error);
}

TEST_CASE("boundary parts of a cell") {
  const Lattice lat({4, 3});
  Rng rng(12);
  for (const auto& c : lat.cells(Family::Omega)) {
    const auto r = boundary_parts_check(lat, c, 16, rng);
    INFO(to_string(c) << " " << r.witness);
    CHECK(r.pass);
  }
}

TEST_CASE("cell group fixes the cell") {
  const Lattice lat({3, 2});
  const CellIndex c{Family::Omega, 0, 0};
  const auto t = lat.tetra(c);
  for (const auto& g : lat.cell_group(c)) {
    for (const auto& v : t.vertices()) {
      bool hit = false;
      for (const auto& w : t.vertices()) hit = hit || (g.apply(v.vec()) - w.vec()).norm() < 1e-12;
      CHECK(hit);
    }
  }
}

TEST_CASE("orbit structure of every cell") {
  for (auto [m, k] : {std::pair{3, 2}, {4, 3}}) {
    const Lattice lat({m, k});
    Rng rng(13);
    for (const auto& c : lat.cells(Family::Omega)) {
      const OrbitReport r = verify_orbits(lat, c, 64, 256, rng);
      INFO(to_string(c));
      CHECK(r.pass());
    }
  }
}
