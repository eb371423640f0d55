#include <doctest.h>

#include <numbers>

#include "lawson/plateau.hpp"

using namespace lawson;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("initial disc at level 2") {
  const Lattice lat({3, 2});
  const TriMeshS3 d = initial_disc(lat, 2);
  CHECK(d.num_triangles() == 32);
  std::size_t boundary = 0;
  for (auto b : d.boundary) boundary += b;
  CHECK(boundary == 16);
  CHECK(boundary_deviation(d, lat) < 1e-12);
  CHECK(boundary_loops(d).size() == 1);
}

TEST_CASE("area gradient matches finite differences along the sphere") {
  const Lattice lat({3, 2});
  TriMeshS3 d = initial_disc(lat, 2);
  Rng rng(31);
  for (auto& v : d.vertices) v = (v + 0.05 * rng.unit4()).normalized();
  const auto g = area_gradient(d);
  const double h = 1e-6;
  for (int v : {3, 7, 12, 20}) {
    for (int trial = 0; trial < 4; ++trial) {
      Vec4 t = rng.unit4();
      t -= t.dot(d.vertices[v]) * d.vertices[v];
      t.normalize();
      TriMeshS3 p = d, q = d;
      p.vertices[v] = std::cos(h) * d.vertices[v] + std::sin(h) * t;
      q.vertices[v] = std::cos(h) * d.vertices[v] - std::sin(h) * t;
      const double fd = (mesh_area(p) - mesh_area(q)) / (2 * h);
      CHECK(g[v].dot(t) == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("symmetry permutations detect an asymmetric mesh") {
  const Lattice lat({3, 2});
  const auto group = lat.cell_group({Family::Omega, 0, 0});
  TriMeshS3 d = initial_disc(lat, 3);
  const auto perm = symmetry_permutations(d, group);
  CHECK(symmetry_deviation(d, group, perm) < 1e-14);
  // identity maps every vertex to itself
  for (std::size_t v = 0; v < d.num_vertices(); ++v) CHECK(perm[0][v] == static_cast<int>(v));
  d.vertices[d.num_vertices() / 2] = (d.vertices[d.num_vertices() / 2] + Vec4(1e-3, 2e-3, 0, 0)).normalized();
  CHECK_THROWS_AS(symmetry_permutations(d, group), Error);
}

TEST_CASE("solver options are validated") {
  const Lattice lat({3, 2});
  SolverOptions o;
  o.level = 1;
  CHECK_THROWS_AS(solve_disc(lat, o), Error);
  o.level = 10;
  CHECK_THROWS_AS(solve_disc(lat, o), Error);
  o.level = 3;
  o.grad_tol = 0;
  CHECK_THROWS_AS(solve_disc(lat, o), Error);
}

TEST_CASE("disc area decreases from level 2 to level 3") {
  const Lattice lat({3, 2});
  SolverOptions o;
  o.level = 3;
  const DiscSolution s = solve_disc(lat, o);
  REQUIRE(s.report.levels.size() == 2);
  CHECK(s.report.levels[1].area < s.report.levels[0].area);
  CHECK(s.report.converged);
  CHECK(s.report.monotone);
  CHECK(s.report.boundary_deviation < 1e-10);
  CHECK(s.report.symmetry_deviation < 1e-10);
  CHECK(s.coarser.size() == 1);
  const auto res = mean_curvature_residuals(s.mesh);
  for (std::size_t v = 0; v < res.size(); ++v) {
    if (s.mesh.boundary[v]) CHECK(res[v] == 0.0);
  }
}

TEST_CASE("step rules reach the same minimizer up to discretization error") {
  const Lattice lat({3, 2});
  double area[3];
  int i = 0;
  for (StepRule rule : {StepRule::Orbit, StepRule::Normal, StepRule::Gradient}) {
    SolverOptions o;
    o.level = 2;
    o.step_rule = rule;
    o.coarse_to_fine = false;
    const DiscSolution s = solve_disc(lat, o);
    CHECK(s.report.converged);
    area[i++] = s.report.area;
  }
  // the unconstrained rule minimizes over the largest set of meshes
  CHECK(area[2] <= area[0] + 1e-12);
  CHECK(area[2] <= area[1] + 1e-12);
  CHECK(area[1] == doctest::Approx(area[0]).epsilon(1e-2));
  CHECK(area[2] == doctest::Approx(area[0]).epsilon(1e-2));
}

TEST_CASE("solved disc is graphical and its bisecting curves behave") {
  for (auto [m, k] : {std::pair{3, 2}, {4, 3}}) {
    const Lattice lat({m, k});
    SolverOptions o;
    o.level = 4;
    const DiscSolution s = solve_disc(lat, o);
    Rng rng(32);
    const GraphicalReport g = verify_graphical(s.mesh, lat, 256, rng);
    INFO(g.witness);
    CHECK(g.pass());
    CHECK(g.overlaps == 0);
    CHECK(std::abs(g.winding) == 1);
    const Curves c = extract_curves(s.mesh, lat);
    CHECK(c.pass());
    CHECK(c.x_offset < 1e-9);
    CHECK(c.alpha.front().isApprox(lat.t_upper(-1).vec(), 1e-12));
    CHECK(c.beta.front().isApprox(lat.t_lower(-1).vec(), 1e-12));
  }
}

TEST_CASE("axis point is symmetric when m == k") {
  const Lattice lat({3, 3});
  SolverOptions o;
  o.level = 4;
  const DiscSolution s = solve_disc(lat, o);
  const Curves c = extract_curves(s.mesh, lat);
  CHECK(c.x_symmetric_gap < 1e-2);
}

TEST_CASE("flat initial disc is not minimal") {
  const Lattice lat({3, 2});
  const TriMeshS3 d = initial_disc(lat, 3);
  double worst = 0;
  for (double r : mean_curvature_residuals(d)) worst = std::max(worst, r);
  CHECK(worst > 1e-2);
  CHECK(mesh_area(d) > 0);
  CHECK(mesh_area(d) < kPi);
}
