#pragma once

#include <array>
#include <string>
#include <vector>

#include "lawson/groups.hpp"
#include "lawson/lattice.hpp"
#include "lawson/mesh.hpp"
#include "lawson/random.hpp"

namespace lawson {

constexpr double kWeldTol = 1e-7;

struct ClosedSurfaceMesh {
  TriMeshS3 mesh;                        // welded and consistently oriented
  std::vector<CellIndex> copy_cells;     // cell holding each copy of the disc
  std::vector<std::size_t> copy_element; // group element producing each copy
  std::vector<int> triangle_copy;        // copy of each triangle
  double max_cell_violation = 0.0;       // -min cone coefficient over copies
};

// Images of the disc under the quadrilateral-circle group, welded.
// Throws WeldFailure if a boundary edge survives welding and Topology if the
// result cannot be oriented.
ClosedSurfaceMesh assemble(const Lattice& lat, const TriMeshS3& disc, const FiniteGroup& quad,
                           double weld_tol = kWeldTol);

// Flips triangles to a consistent orientation, keeping the first one.
// Returns false when the mesh is not orientable.
bool orient_consistently(TriMeshS3& m);

struct Topology {
  long vertices = 0, edges = 0, faces = 0;
  long chi = 0;
  long genus = 0;
  int boundary_loops = 0;
  bool orientable = false;
  bool connected = false;
};

// Throws InvalidMesh on an edge with more than two triangles.
Topology topology(const TriMeshS3& m);

// Octahedral triangulation of the great sphere x4 = 0, subdivided.
TriMeshS3 round_sphere_mesh(int level);

struct ElementSymmetry {
  double deviation = 0.0;
  bool preserves_sides = false;
  bool preserves_orientation = false;
};

struct SymmetryReport {
  double max_deviation = 0.0;
  std::vector<ElementSymmetry> elements;  // in group order
};

// Nearest-vertex deviation of g(mesh) from mesh for every element, with
// side and orientation flags read off the matched vertices.
SymmetryReport symmetry_check(const TriMeshS3& mesh, const FiniteGroup& group, double radius = 1e-6);

// The mesh meets C and C-perp exactly in the half-integer points.
CheckResult axis_meet_check(const TriMeshS3& mesh, const Lattice& lat, double tol = 1e-9);
// Every quadrilateral circle is a closed chain of mesh edges.
CheckResult quad_circles_check(const TriMeshS3& mesh, const Lattice& lat, double tol = 1e-9);

struct UmbilicReport {
  std::vector<std::string> candidate_names;
  std::vector<double> candidate_stat;  // |k1 - k2| at each candidate
  std::vector<double> sample_stat;     // at random vertices
  double percentile5 = 0.0;
  std::size_t expected_count = 0;
  long total_degree_target = 0;  // 4g - 4, for reference only
  std::vector<std::string> control_names;  // half-integer points that are not umbilic
  std::vector<double> control_stat;
  bool pass = false;
  std::string witness;
};

// Principal curvature gap from a quadric fit over the 2-ring.
double curvature_gap(const TriMeshS3& mesh, const std::vector<std::vector<int>>& neighbors,
                     const std::vector<Vec4>& normals, int v);

// Throws ProbeMiss if a candidate point is not a mesh vertex.
UmbilicReport umbilic_probe(const TriMeshS3& mesh, const Lattice& lat, std::size_t samples, Rng& rng,
                            double tol = 1e-9);

struct Crossing {
  Vec4 point = Vec4::Zero();
  int edge = -1;             // index into SphericalTetrahedron::kEdges
  double theta = 0.0;        // dihedral angle of the cell at that edge
  double corner_angle = 0.0; // angle of the piece at the point
};

struct CellLedger {
  CellIndex cell;
  long chi = 0;
  int b_tilde = 0;  // boundary components of the piece
  int g_tilde = 0;  // twice its genus
  std::array<int, 6> edge_counts{};
  std::vector<Crossing> crossings;
  double expected = 0.0;           // (5 - 2g - 2b - 1/k - 1/m) pi
  double residual = 0.0;           // with exact dihedral angles
  double measured_residual = 0.0;  // with corner angles measured on the mesh
  std::string classification;      // "quadrilateral", "pentagon" or "other"
};

struct LedgerReport {
  std::vector<CellLedger> cells;
  double max_residual = 0.0;
  double max_measured_residual = 0.0;
  bool all_quadrilateral = false;
};

// Throws CutError if a piece is not a manifold with boundary.
LedgerReport ledger(const TriMeshS3& mesh, const Lattice& lat);

std::string classify_crossings(const std::array<int, 6>& edge_counts);

}  // namespace lawson
