#include <doctest.h>

#include <numbers>

#include "lawson/mesh.hpp"
#include "lawson/plateau.hpp"
#include "lawson/surface.hpp"

using namespace lawson;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("subdivision quadruples triangles and keeps points on the sphere") {
  const TriMeshS3 s0 = round_sphere_mesh(0);
  const TriMeshS3 s1 = subdivide(s0);
  CHECK(s1.num_triangles() == 4 * s0.num_triangles());
  CHECK(s1.num_vertices() == 18);
  for (const auto& v : s1.vertices) CHECK(v.norm() == doctest::Approx(1.0));
  CHECK(euler_characteristic(s1) == 2);
}

TEST_CASE("geodesic triangulations of a great sphere have area 4 pi") {
  for (int level : {0, 2, 4}) CHECK(mesh_area(round_sphere_mesh(level)) == doctest::Approx(4 * kPi).epsilon(1e-12));
}

TEST_CASE("clipping a sphere to a hemisphere leaves a disc") {
  const TriMeshS3 s = round_sphere_mesh(2);
  const Vec4 h = Vec4(1, 2, 3, 0).normalized();
  const TriMeshS3 half = clip(s, std::span<const Vec4>(&h, 1));
  CHECK(euler_characteristic(half) == 1);
  CHECK(boundary_loops(half).size() == 1);
  for (const auto& v : half.vertices) CHECK(h.dot(v) >= -1e-12);
  CHECK(mesh_area(half) == doctest::Approx(2 * kPi).epsilon(0.02));
}

TEST_CASE("compaction drops unused vertices") {
  TriMeshS3 m = round_sphere_mesh(0);
  m.vertices.push_back(Vec4(0, 0, 0, 1));
  m.boundary.push_back(0);
  m.orbit_tag.push_back(-1);
  CHECK(compact(m).num_vertices() == 6);
}

TEST_CASE("vertex index finds nearest points within the radius") {
  const TriMeshS3 s = round_sphere_mesh(2);
  const VertexIndex idx(s.vertices, 1e-6);
  for (std::size_t v = 0; v < s.num_vertices(); ++v) {
    CHECK(idx.nearest(s.vertices[v] + Vec4::Constant(1e-9), 1e-6) == static_cast<int>(v));
  }
  CHECK(idx.nearest(Vec4(0, 0, 0, 1), 1e-6) == -1);
}

TEST_CASE("vertex normals are unit and tangent") {
  const TriMeshS3 s = round_sphere_mesh(2);
  const auto n = vertex_normals(s);
  for (std::size_t v = 0; v < n.size(); ++v) {
    CHECK(n[v].norm() == doctest::Approx(1.0));
    CHECK(std::abs(n[v].dot(s.vertices[v])) < 1e-12);
    CHECK(std::abs(std::abs(n[v][3]) - 1.0) < 1e-12);  // normal of x4 = 0
  }
}

TEST_CASE("connected components") {
  TriMeshS3 m = round_sphere_mesh(1);
  CHECK(connected_components(m) == 1);
  const std::size_t n = m.num_vertices();
  TriMeshS3 two = m;
  for (const auto& v : m.vertices) two.vertices.push_back(v);
  for (auto t : m.triangles) {
    for (int& x : t) x += static_cast<int>(n);
    two.triangles.push_back(t);
  }
  CHECK(connected_components(two) == 2);
}
