#pragma once

#include <string>
#include <vector>

#include "lawson/lattice.hpp"
#include "lawson/mesh.hpp"
#include "lawson/random.hpp"

namespace lawson {

// Newton-like rules scale a cotangent-stiffness solve by the normal
// component of the motion; all rules backtrack by halving until the area
// decreases.
enum class StepRule {
  // Interior vertices first move along the rotation orbits of the cell axis
  // (projections fixed), then along their normals. solve_disc uses this on
  // the coarsest level and Normal on refined levels.
  Orbit,
  // Interior vertices move along their normals only.
  Normal,
  // Tangential area gradient over the lumped mass with Barzilai-Borwein
  // steps and backtracking; first step moves 0.1 mean edge lengths.
  Gradient,
};

struct SolverOptions {
  int level = 5;
  StepRule step_rule = StepRule::Orbit;
  // Stop when a full step moves no vertex further than this. For the
  // gradient rule the step is measured at the reference length h^2.
  double grad_tol = 1e-10;
  double sym_tol = 1e-10;
  std::size_t max_iterations = 200000;
  // Solve on coarser levels first and refine the result.
  bool coarse_to_fine = true;
  int coarse_level = 2;
  // Largest full-step displacement at which a stalled line search still
  // counts as converged (area changes below round-off).
  double stall_tol = 1e-8;
};

struct LevelStats {
  int level = 0;
  std::size_t vertices = 0;
  std::size_t triangles = 0;
  std::size_t iterations = 0;
  double area = 0.0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double final_step = 0.0;  // full-step displacement at exit
  double max_symmetry_deviation = 0.0;  // over all accepted iterations
  bool converged = false;
  bool stalled = false;
};

struct DiscReport {
  std::vector<LevelStats> levels;
  double area = 0.0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double boundary_deviation = 0.0;
  double symmetry_deviation = 0.0;
  double containment_violation = 0.0;  // -min cone coefficient, 0 if inside
  bool converged = false;
  bool monotone = true;
  Vec4 axis_point = Vec4::Zero();
  std::vector<Vec4> alpha, beta;
  std::vector<std::string> warnings;
};

// Two triangles over the quadrilateral of Omega_0^0, subdivided level times.
// Its boundary vertices split each side of the quadrilateral evenly.
TriMeshS3 initial_disc(const Lattice& lat, int level);

// perm[g][v] is the vertex that g maps v to; throws InvalidInput if the mesh
// is not invariant within tol.
std::vector<std::vector<int>> symmetry_permutations(const TriMeshS3& mesh, const std::vector<Isometry4>& group,
                                                    double tol = 1e-9);
// Max over group elements and vertices of |g x_v - x_{perm(v)}|.
double symmetry_deviation(const TriMeshS3& mesh, const std::vector<Isometry4>& group,
                          const std::vector<std::vector<int>>& perm);

// Total spherical area, summed pairwise.
double mesh_area(const TriMeshS3& mesh);
// Gradient of mesh_area with respect to each vertex, in R^4.
std::vector<Vec4> area_gradient(const TriMeshS3& mesh);

// |nu . L x| / h^2 per vertex (cotangent Laplacian, area-weighted normal,
// mean incident edge length h); zero on boundary vertices.
std::vector<double> mean_curvature_residuals(const TriMeshS3& mesh);

// Largest distance of a boundary vertex from the quadrilateral of Omega_0^0.
double boundary_deviation(const TriMeshS3& mesh, const Lattice& lat);
double containment_violation(const TriMeshS3& mesh, const Lattice& lat);

// Area descent on interior vertices with symmetrization after each step.
// The axis defines the orbits used by the orbit rule.
LevelStats minimize(TriMeshS3& mesh, const std::vector<Isometry4>& group, const GreatCircle& axis,
                    const SolverOptions& opts, bool* monotone = nullptr);

struct DiscSolution {
  TriMeshS3 mesh;
  DiscReport report;
  std::vector<TriMeshS3> coarser;  // converged meshes of the earlier levels
};

DiscSolution solve_disc(const Lattice& lat, const SolverOptions& opts);

// Graphicality over the projection along the orbits of the axis of Omega_0^0.
struct GraphicalReport {
  std::size_t overlaps = 0;           // pairs of projected triangles with interior overlap
  std::size_t orientation_flips = 0;  // projected triangles against the majority orientation
  double max_angle_defect = 0.0;      // |2pi - projected angle sum| at interior vertices
  int winding = 0;                    // of the projected boundary around the pole
  double min_transversality = 0.0;    // min |n . K| away from the corners
  double min_transversality_corner = 0.0;
  double tangency_tol = 0.0;
  std::size_t orbits = 0;
  std::size_t orbits_bad = 0;  // sampled orbits not hitting the disc exactly once
  std::string witness;
  bool pass() const;
};

GraphicalReport verify_graphical(const TriMeshS3& mesh, const Lattice& lat, std::size_t n_orbits, Rng& rng,
                                 double tangency_tol = 1e-4);

// Intersections with the bisecting spheres of Omega_0^0 and the quadrants
// they cut the disc into.
struct Curves {
  std::vector<Vec4> alpha;  // disc meets x2 = 0, from t^{-1/2} to t^{1/2}
  std::vector<Vec4> beta;   // disc meets x4 = 0, from t_{-1/2} to t_{1/2}
  Vec4 x = Vec4::Zero();    // common point, on the arc from t_0 to t^0
  double x_offset = 0.0;    // distance of x from that arc
  double x_symmetric_gap = 0.0;  // |x1 - x3|, zero when m == k
  std::vector<CheckResult> quadrants;  // each quadrant is a disc bounded as expected
  bool pass() const;
};

// Throws Topology when a curve is not a single arc.
Curves extract_curves(const TriMeshS3& mesh, const Lattice& lat);

}  // namespace lawson
