#include <doctest.h>

#include <map>
#include <numbers>

#include "lawson/plateau.hpp"
#include "lawson/surface.hpp"

using namespace lawson;

namespace {

constexpr double kPi = std::numbers::pi;

struct Built {
  DiscSolution disc;
  NamedGroups groups;
  ClosedSurfaceMesh surface;
};

const Built& built(int m, int k, int level) {
  static std::map<std::array<int, 3>, Built> cache;
  const std::array<int, 3> key{m, k, level};
  auto it = cache.find(key);
  if (it == cache.end()) {
    const Lattice lat({m, k});
    SolverOptions o;
    o.level = level;
    DiscSolution d = solve_disc(lat, o);
    NamedGroups g = build_named_groups(lat);
    ClosedSurfaceMesh s = assemble(lat, d.mesh, g.quad);
    it = cache.emplace(key, Built{std::move(d), std::move(g), std::move(s)}).first;
  }
  return it->second;
}

}  // namespace

TEST_CASE("round sphere mesh has genus 0") {
  const Topology t = topology(round_sphere_mesh(2));
  CHECK(t.chi == 2);
  CHECK(t.genus == 0);
  CHECK(t.orientable);
  CHECK(t.connected);
  CHECK(t.boundary_loops == 0);
}

TEST_CASE("non-manifold edges are rejected") {
  TriMeshS3 m = round_sphere_mesh(0);
  m.vertices.push_back(Vec4(0, 0, 0, 1));
  m.boundary.push_back(0);
  m.orbit_tag.push_back(-1);
  m.triangles.push_back({0, 2, 6});
  CHECK_THROWS_AS(topology(m), Error);
}

TEST_CASE("orientation repair and non-orientable strips") {
  TriMeshS3 s = round_sphere_mesh(1);
  std::swap(s.triangles[5][1], s.triangles[5][2]);
  CHECK(orient_consistently(s));
  CHECK(topology(s).orientable);

  TriMeshS3 mobius;
  for (int i = 0; i < 6; ++i) mobius.vertices.push_back(Vec4::Unit(i % 4) * 0.5 + Vec4::Constant(0.25 * i));
  for (auto& v : mobius.vertices) v.normalize();
  mobius.triangles = {{0, 1, 4}, {0, 4, 3}, {1, 2, 5}, {1, 5, 4}, {2, 3, 0}, {2, 0, 5}};
  mobius.boundary.assign(6, 0);
  mobius.orbit_tag.assign(6, -1);
  CHECK(!orient_consistently(mobius));
}

TEST_CASE("assembled M[3,2] is a closed genus 2 surface") {
  const Lattice lat({3, 2});
  const Built& b = built(3, 2, 4);
  CHECK(b.surface.copy_cells.size() == 12);
  const Topology t = topology(b.surface.mesh);
  CHECK(t.chi == -2);
  CHECK(t.genus == 2);
  CHECK(t.orientable);
  CHECK(t.connected);
  CHECK(b.surface.max_cell_violation < 1e-6);
  CHECK(axis_meet_check(b.surface.mesh, lat).pass);
  CHECK(quad_circles_check(b.surface.mesh, lat).pass);
}

TEST_CASE("a hole in the disc makes welding fail") {
  const Lattice lat({3, 2});
  const Built& b = built(3, 2, 4);
  TriMeshS3 holed = b.disc.mesh;
  holed.triangles.erase(holed.triangles.begin() + static_cast<long>(holed.triangles.size() / 2));
  CHECK_THROWS_AS(assemble(lat, holed, b.groups.quad), Error);
}

TEST_CASE("side and orientation flags of the symmetry group") {
  const Built& b = built(3, 2, 4);
  const SymmetryReport r = symmetry_check(b.surface.mesh, b.groups.full);
  CHECK(r.max_deviation < 1e-6);
  CHECK(r.elements[0].deviation == 0.0);
  CHECK(r.elements[0].preserves_sides);
  CHECK(r.elements[0].preserves_orientation);
  for (std::size_t i = 0; i < b.groups.full.order(); ++i) {
    const Isometry4& g = b.groups.full.element(i);
    CHECK(r.elements[i].preserves_sides == b.groups.spheres.contains(g));
    CHECK(r.elements[i].preserves_orientation == b.groups.mplus.contains(g));
  }
  // generators: sphere reflections keep the sides, quadrilateral reflections swap them
  const SymmetryReport s = symmetry_check(b.surface.mesh, FiniteGroup::close(b.groups.spheres.generators(), 100));
  for (const auto& e : s.elements) CHECK(e.preserves_sides);
  for (const auto& q : b.groups.quad.generators()) {
    const auto idx = b.groups.full.find(q);
    REQUIRE(idx.has_value());
    CHECK(!r.elements[*idx].preserves_sides);
  }
}

TEST_CASE("umbilic candidates for M[3,2] are the four points on C-perp") {
  const Lattice lat({3, 2});
  const Built& b = built(3, 2, 4);
  Rng rng(41);
  const UmbilicReport u = umbilic_probe(b.surface.mesh, lat, 1000, rng);
  CHECK(u.candidate_names.size() == 4);
  for (const auto& n : u.candidate_names) CHECK(n.rfind("t^", 0) == 0);
  CHECK(u.pass);
  CHECK(u.total_degree_target == 4);
  for (double c : u.control_stat) CHECK(c > u.percentile5);
}

TEST_CASE("M[3,3] has twelve umbilic candidates") {
  const Lattice lat({3, 3});
  const Built& b = built(3, 3, 4);
  Rng rng(42);
  const UmbilicReport u = umbilic_probe(b.surface.mesh, lat, 1000, rng);
  CHECK(u.expected_count == 12);
  CHECK(u.candidate_names.size() == 12);
  CHECK(u.pass);
}

TEST_CASE("probe misses raise an error") {
  const Lattice lat({3, 2});
  Rng rng(43);
  CHECK_THROWS_AS(umbilic_probe(round_sphere_mesh(2), lat, 10, rng), Error);
}

TEST_CASE("crossing classification") {
  CHECK(classify_crossings({1, 1, 0, 0, 1, 1}) == "quadrilateral");
  CHECK(classify_crossings({1, 0, 1, 1, 0, 1}) == "quadrilateral");
  CHECK(classify_crossings({0, 1, 1, 1, 1, 0}) == "other");  // misses C and C-perp
  CHECK(classify_crossings({1, 1, 1, 1, 0, 0}) == "other");  // missed edges share a vertex
  CHECK(classify_crossings({1, 0, 0, 1, 1, 2}) == "pentagon");
  CHECK(classify_crossings({1, 0, 0, 2, 1, 1}) == "other");
  CHECK(classify_crossings({0, 0, 0, 0, 0, 0}) == "other");
}

TEST_CASE("ledger of M[3,2]") {
  const Lattice lat({3, 2});
  const Built& b = built(3, 2, 4);
  const LedgerReport l = ledger(b.surface.mesh, lat);
  CHECK(l.cells.size() == 24);
  CHECK(l.all_quadrilateral);
  for (const auto& c : l.cells) {
    CHECK(c.b_tilde == 1);
    CHECK(c.g_tilde == 0);
    REQUIRE(c.crossings.size() == 4);
    double sum = 0;
    for (const auto& x : c.crossings) sum += kPi - x.theta;
    CHECK(std::abs(sum - 13 * kPi / 6) < 1e-3);
    CHECK(c.expected == doctest::Approx(13 * kPi / 6));
  }
  CHECK(l.max_measured_residual < 5e-2 * kPi);
}
