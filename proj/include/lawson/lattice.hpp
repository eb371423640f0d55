#pragma once

#include <array>
#include <string>
#include <vector>

#include "lawson/random.hpp"
#include "lawson/s3core.hpp"

namespace lawson {

struct LatticeParams {
  int m = 3;
  int k = 2;
};

enum class Family { Omega, OmegaHalf, OmegaEven, OmegaOdd };

std::string_view to_string(Family f);

// Half-integer indices are stored doubled: i2 = 2i.
struct CellIndex {
  Family family = Family::Omega;
  int i2 = 0;
  int j2 = 0;
  bool operator==(const CellIndex&) const = default;
};

std::string to_string(const CellIndex& c);

struct BoundaryParts {
  std::array<std::array<PointS3, 3>, 2> plus;   // triangles through the C-edge's ends
  std::array<std::array<PointS3, 3>, 2> minus;  // triangles over the C-edge
  std::array<std::array<PointS3, 2>, 4> quad;   // arcs of Q, cyclic
  std::array<PointS3, 4> corners;
};

class Lattice {
 public:
  // Throws UnsupportedParameters unless m >= 3 and k >= 2.
  explicit Lattice(LatticeParams params);

  const LatticeParams& params() const { return params_; }
  int m() const { return params_.m; }
  int k() const { return params_.k; }

  PiAngle lower_angle(int i2) const { return PiAngle(i2, 2L * params_.m); }
  PiAngle upper_angle(int j2) const { return PiAngle(j2, 2L * params_.k); }
  PointS3 t_lower(int i2) const;
  PointS3 t_upper(int j2) const;
  GreatSphere sigma_lower(int i2) const;  // sphere through C-perp and t_i
  GreatSphere sigma_upper(int j2) const;  // sphere through C and t^j
  GreatCircle circle(int i2, int j2) const;  // S(t_i, t^j), oriented t_i -> t^j

  // Half-integer circles (the quadrilateral edges) and integer ones (axes).
  std::vector<GreatCircle> quad_circles() const;
  std::vector<GreatCircle> axis_circles() const;
  std::vector<GreatSphere> spheres() const;  // k upper then m lower

  // Canonical cells of a family, i in [0,2m), j in [0,2k), row-major in i.
  const std::vector<CellIndex>& cells(Family f) const;
  CellIndex canonical(const CellIndex& c) const;  // throws InvalidIndex on parity
  std::size_t cell_position(const CellIndex& c) const;

  SphericalTetrahedron tetra(const CellIndex& c) const;
  // Sub-tetrahedra: si, sj in {-1, 0, +1}; 0 keeps the full side range.
  SphericalTetrahedron subtetra(int i2, int j2, int si, int sj) const;
  GreatCircle axis(const CellIndex& c) const { return circle(c.i2, c.j2); }
  // Identity, reflections in the two bisecting spheres and in the axis.
  std::vector<Isometry4> cell_group(const CellIndex& c) const;
  std::vector<Isometry4> cell_group_hat(const CellIndex& c) const;

  std::vector<CellIndex> locate(const PointS3& p, Family f, double tol = 1e-10) const;
  BoundaryParts boundary_parts(const CellIndex& c) const;

 private:
  LatticeParams params_;
  std::array<std::vector<CellIndex>, 4> cells_;
  std::array<std::vector<SphericalTetrahedron>, 4> tetras_;
};

std::array<PointS3, 4> cell_vertices(const Lattice& lat, const CellIndex& c);

// Sampled checks; each returns the worst residual and a witness on failure.
struct CheckResult {
  bool pass = true;
  double residual = 0.0;
  std::string witness;
  void fail(const std::string& w, double r = 1.0);
  void track(double r, double tol, const std::string& w);
};

CheckResult coverage_check(const Lattice& lat, Family f, std::size_t n, Rng& rng, double interior_tol = 1e-9);
CheckResult even_odd_partition_check(const Lattice& lat);
CheckResult cell_metrics_check(const Lattice& lat, double tol = 1e-12);
CheckResult boundary_parts_check(const Lattice& lat, const CellIndex& c, int samples, Rng& rng);
CheckResult circle_union_check(const Lattice& lat, std::size_t n, Rng& rng, double tol = 1e-10);

// Orbit structure of a cell under rotations along its axis.
struct OrbitReport {
  std::size_t orbits = 0;
  std::size_t meeting = 0;
  CheckResult rotated_copies;       // disjointness past a quarter turn
  CheckResult subcells;             // orbit meets each sub-tetrahedron fully or not at all
  CheckResult single_arc;           // one arc, one end on each boundary part
  CheckResult quad_orbits;          // orbits through Q meet the cell once
  CheckResult transversal;          // non-vanishing derivative at arc ends
  CheckResult projected_disc;       // winding of the projected quadrilateral
  std::string quarter_turn_plus;    // observed contact point for +pi/2
  std::string quarter_turn_minus;   // and for -pi/2
  bool pass() const;
};

OrbitReport verify_orbits(const Lattice& lat, const CellIndex& c, std::size_t n_orbits, std::size_t points_per_orbit,
                          Rng& rng);

}  // namespace lawson
