#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "lawson/s3core.hpp"

namespace lawson {

using Tri = std::array<int, 3>;

struct TriMeshS3 {
  std::vector<Vec4> vertices;       // unit vectors
  std::vector<Tri> triangles;       // consistently oriented
  std::vector<std::uint8_t> boundary;  // 1 on boundary vertices
  std::vector<int> orbit_tag;       // symmetry orbit id, -1 if unset

  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_triangles() const { return triangles.size(); }
};

struct Edge {
  int a, b;  // a < b
  bool operator==(const Edge&) const = default;
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept {
    return std::hash<long long>()((static_cast<long long>(e.a) << 32) ^ static_cast<long long>(e.b));
  }
};

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Edge -> incident triangle indices.
std::unordered_map<Edge, std::vector<int>, EdgeHash> edge_faces(const TriMeshS3& m);
std::vector<Edge> sorted_edges(const TriMeshS3& m);
// Closed boundary loops as vertex cycles.
std::vector<std::vector<int>> boundary_loops(const TriMeshS3& m);
std::vector<std::vector<int>> vertex_neighbors(const TriMeshS3& m);
std::vector<std::vector<int>> vertex_faces(const TriMeshS3& m);
int connected_components(const TriMeshS3& m, std::vector<int>* label = nullptr);
double mean_edge_length(const TriMeshS3& m);

// Unit normal of the oriented triangle, orthogonal to its three vertices.
Vec4 face_normal(const Vec4& a, const Vec4& b, const Vec4& c);
// Area-weighted vertex normals, orthogonal to the vertex.
std::vector<Vec4> vertex_normals(const TriMeshS3& m);

// Midpoint subdivision; new vertices on great-circle midpoints. Boundary
// midpoints inherit the boundary flag.
TriMeshS3 subdivide(const TriMeshS3& m);

// Part of the mesh in {x : h.x >= 0 for every h}, cut along the planes with
// new vertices at chordal edge crossings projected back to S^3. Vertices with
// |h.x| <= tol count as on the plane.
TriMeshS3 clip(const TriMeshS3& m, std::span<const Vec4> halfspaces, double tol = 1e-12);
// Drops vertices not used by any triangle.
TriMeshS3 compact(const TriMeshS3& m);
long euler_characteristic(const TriMeshS3& m);

// Nearest-vertex lookup by spatial hashing.
class VertexIndex {
 public:
  VertexIndex(const std::vector<Vec4>& pts, double cell);
  // Index of the nearest point within radius (radius <= cell), or -1.
  int nearest(const Vec4& p, double radius) const;

 private:
  using Key = std::array<long long, 4>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  Key key(const Vec4& p) const;
  const std::vector<Vec4>* pts_;
  double cell_;
  std::unordered_map<Key, std::vector<int>, KeyHash> map_;
};

}  // namespace lawson
