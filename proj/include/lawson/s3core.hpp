#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lawson/error.hpp"

namespace lawson {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

// Rational multiple of pi, num/den reduced with den > 0.
class PiAngle {
 public:
  PiAngle() = default;
  PiAngle(long num, long den);

  long num() const { return num_; }
  long den() const { return den_; }
  double radians() const;

  PiAngle operator+(const PiAngle& o) const;
  PiAngle operator-(const PiAngle& o) const;
  PiAngle operator-() const { return PiAngle(-num_, den_); }
  bool operator==(const PiAngle& o) const = default;

  // Reduced into [0, period*pi).
  PiAngle wrapped(long period = 2) const;

 private:
  long num_ = 0;
  long den_ = 1;
};

class PointS3 {
 public:
  PointS3() : x_(1, 0, 0, 0) {}
  // Normalizes; throws InvalidInput for (near) zero vectors.
  explicit PointS3(const Vec4& v);
  PointS3(double a, double b, double c, double d) : PointS3(Vec4(a, b, c, d)) {}

  // p_phi on C and p^phi on C-perp.
  static PointS3 lower(double phi);
  static PointS3 lower(const PiAngle& phi) { return lower(phi.radians()); }
  static PointS3 upper(double phi);
  static PointS3 upper(const PiAngle& phi) { return upper(phi.radians()); }

  const Vec4& vec() const { return x_; }
  double operator[](int i) const { return x_[i]; }
  PointS3 antipode() const;
  double dot(const PointS3& o) const { return x_.dot(o.x_); }
  double distance(const PointS3& o) const;  // geodesic

 private:
  Vec4 x_;
};

class Isometry4 {
 public:
  Isometry4() : m_(Mat4::Identity()) {}
  // Throws InvalidInput unless m^T m = I within tol.
  explicit Isometry4(const Mat4& m, double tol = 1e-10);

  static Isometry4 identity() { return Isometry4(); }

  const Mat4& matrix() const { return m_; }
  PointS3 apply(const PointS3& p) const;
  Vec4 apply(const Vec4& v) const { return m_ * v; }
  Isometry4 operator*(const Isometry4& o) const;
  Isometry4 inverse() const;
  double det() const;
  double distance(const Isometry4& o) const;  // max-abs entry difference

 private:
  struct Unchecked {};
  Isometry4(const Mat4& m, Unchecked) : m_(m) {}
  Mat4 m_;
};

class GreatCircle {
 public:
  GreatCircle();  // C = S(p_0, p_{pi/2})
  // Circle through a and b, oriented from a towards b.
  GreatCircle(const PointS3& a, const PointS3& b);

  static GreatCircle from_basis(const Vec4& e1, const Vec4& e2, double tol = 1e-10);

  const Vec4& e1() const { return e1_; }
  const Vec4& e2() const { return e2_; }
  PointS3 point(double angle) const;
  Mat4 projector() const;
  // Oriented so that det[e1 e2 f1 f2] = +1.
  GreatCircle orthocomplement() const;
  double distance(const PointS3& p) const;  // geodesic distance to the circle
  bool contains(const PointS3& p, double tol = 1e-10) const;
  bool same_set(const GreatCircle& o, double tol = 1e-10) const;
  // Unit tangent at p (assumed on the circle) in the direction of orientation.
  Vec4 tangent(const Vec4& p) const;

 private:
  Vec4 e1_, e2_;
};

class GreatSphere {
 public:
  GreatSphere() : n_(0, 0, 0, 1) {}
  explicit GreatSphere(const Vec4& normal);

  const Vec4& normal() const { return n_; }
  double signed_distance(const Vec4& p) const { return n_.dot(p); }
  bool contains(const PointS3& p, double tol = 1e-10) const;
  bool same_set(const GreatSphere& o, double tol = 1e-10) const;

 private:
  Vec4 n_;
};

struct TangentVector {
  PointS3 base;
  Vec4 dir = Vec4::Zero();
};

// Standard coordinate families. sphere_lower(phi) is the sphere through C-perp
// and p_phi; sphere_upper(phi) the one through C and p^phi.
GreatCircle circle_C();
GreatCircle circle_Cperp();
GreatSphere sphere_lower(double phi);
GreatSphere sphere_upper(double phi);
GreatCircle frame_circle(double phi_lower, double phi_upper);

// Reflection through the subspace spanned by 1-3 orthonormal vectors.
Isometry4 reflection(std::span<const Vec4> basis);
Isometry4 reflection(const GreatCircle& c);
Isometry4 reflection(const GreatSphere& s);
PointS3 reflect(std::span<const Vec4> basis, const PointS3& p);

Isometry4 rotate_about(const GreatCircle& c, double phi);
Isometry4 rotate_along(const GreatCircle& c, double phi);
TangentVector killing_eval(const GreatCircle& c, const PointS3& p);

// Orbit of the rotations along c through x, met with the closed hemisphere
// c-perp * pole.
PointS3 orbit_project(const GreatCircle& c, const PointS3& pole, const PointS3& x);

PointS3 geodesic(const PointS3& p, const PointS3& q, double t);
double arc_length(const PointS3& p, const PointS3& q);
PointS3 midpoint(const PointS3& p, const PointS3& q);

// Intersections as sets. A coincident pair reports `whole`.
struct CircleIntersection {
  bool whole = false;
  std::vector<PointS3> points;
};
CircleIntersection intersect(const GreatCircle& a, const GreatCircle& b, double tol = 1e-10);
CircleIntersection intersect(const GreatSphere& s, const GreatCircle& c, double tol = 1e-10);
std::optional<GreatCircle> intersect(const GreatSphere& a, const GreatSphere& b, double tol = 1e-10);

// Unoriented angles in [0, pi/2].
double line_angle(const Vec4& u, const Vec4& v);
double intersection_angle(const GreatSphere& a, const GreatSphere& b);
double intersection_angle(const GreatCircle& a, const GreatCircle& b, const PointS3& at);
// Angle between a circle and a sphere at a common point, measured between the
// circle tangent and the sphere (0 = tangent, pi/2 = orthogonal).
double intersection_angle(const GreatSphere& s, const GreatCircle& c, const PointS3& at);

// Spherical area of the geodesic triangle abc.
double triangle_area(const Vec4& a, const Vec4& b, const Vec4& c);
// Coordinates (alpha, beta, gamma, delta) with p = alpha a + beta b + gamma c + delta n,
// n the unit normal of span(a, b, c).
Vec4 triangle_coordinates(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& p);
bool in_geodesic_triangle(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& p, double tol = 1e-10);
// p on the minimizing arc ab (a, b not antipodal).
bool on_arc(const Vec4& a, const Vec4& b, const Vec4& p, double tol = 1e-10);
// Generalized cross product: orthogonal to a, b, c with det[a b c n] = |n|^2.
Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c);

struct Membership {
  bool inside = false;
  std::array<double, 4> coeffs{};
};

class SphericalTetrahedron {
 public:
  static constexpr std::array<std::array<int, 2>, 6> kEdges{
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

  // Throws InvalidTetrahedron unless |det| > 1e-10.
  explicit SphericalTetrahedron(const std::array<PointS3, 4>& v);

  const std::array<PointS3, 4>& vertices() const { return v_; }
  const PointS3& vertex(int i) const { return v_[i]; }
  Membership membership(const PointS3& p, double tol = 1e-10) const;
  Membership membership(const Vec4& p, double tol = 1e-10) const;
  // Cone coefficients c with p = sum c_i v_i.
  Vec4 coefficients(const Vec4& p) const { return inv_ * p; }
  const Mat4& inverse_matrix() const { return inv_; }
  double edge_length(int edge) const;
  double dihedral_angle(int edge) const;
  PointS3 centroid() const;
  // Face opposite vertex i, as the three remaining vertex indices.
  std::array<int, 3> face(int opposite) const;

 private:
  std::array<PointS3, 4> v_;
  Mat4 inv_;
};

// Descriptive checks of the basic C / C-perp geometry at sampled angles.
struct GeometryCheck {
  std::string item;
  double residual = 0.0;
  bool pass = true;
  std::string witness;
};
std::vector<GeometryCheck> basic_geometry_checks(std::span<const std::array<double, 4>> angles,
                                                 double tol = 1e-9);

}  // namespace lawson
