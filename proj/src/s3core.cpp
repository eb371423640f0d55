#include "lawson/s3core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

namespace lawson {

namespace {

constexpr double kPi = std::numbers::pi;


// Angle between unit-ish vectors, accurate near 0 and pi.
double vector_angle(const Vec4& u, const Vec4& v) {
  return 2.0 * std::atan2((u - v).norm(), (u + v).norm());
}

std::string fmt_vec(const Vec4& v) {
  std::ostringstream os;
  os.precision(6);
  os << "(" << v[0] << "," << v[1] << "," << v[2] << "," << v[3] << ")";
  return os.str();
}

}  // namespace

PiAngle::PiAngle(long num, long den) {
  if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator in angle");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long g = std::gcd(num < 0 ? -num : num, den);
  num_ = g ? num / g : 0;
  den_ = g ? den / g : 1;
}

double PiAngle::radians() const { return kPi * static_cast<double>(num_) / static_cast<double>(den_); }

PiAngle PiAngle::operator+(const PiAngle& o) const {
  return PiAngle(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

PiAngle PiAngle::operator-(const PiAngle& o) const { return *this + (-o); }

PiAngle PiAngle::wrapped(long period) const {
  const long p = period * den_;
  long n = num_ % p;
  if (n < 0) n += p;
  return PiAngle(n, den_);
}

PointS3::PointS3(const Vec4& v) {
  const double n = v.norm();
  if (!(n > 1e-300) || !std::isfinite(n)) throw Error(ErrorCode::InvalidInput, "cannot normalize zero vector");
  x_ = v / n;
}

PointS3 PointS3::lower(double phi) { return PointS3(Vec4(std::cos(phi), std::sin(phi), 0, 0)); }
PointS3 PointS3::upper(double phi) { return PointS3(Vec4(0, 0, std::cos(phi), std::sin(phi))); }
PointS3 PointS3::antipode() const { return PointS3(Vec4(-x_)); }
double PointS3::distance(const PointS3& o) const { return vector_angle(x_, o.x_); }

Isometry4::Isometry4(const Mat4& m, double tol) : m_(m) {
  const double err = (m.transpose() * m - Mat4::Identity()).cwiseAbs().maxCoeff();
  if (!(err <= tol)) {
    throw Error(ErrorCode::InvalidInput, "matrix is not orthogonal (deviation " + std::to_string(err) + ")");
  }
}

PointS3 Isometry4::apply(const PointS3& p) const { return PointS3(Vec4(m_ * p.vec())); }
Isometry4 Isometry4::operator*(const Isometry4& o) const { return Isometry4(m_ * o.m_, Unchecked{}); }
Isometry4 Isometry4::inverse() const { return Isometry4(Mat4(m_.transpose()), Unchecked{}); }
double Isometry4::det() const { return m_.determinant(); }
double Isometry4::distance(const Isometry4& o) const { return (m_ - o.m_).cwiseAbs().maxCoeff(); }

GreatCircle::GreatCircle() : e1_(1, 0, 0, 0), e2_(0, 1, 0, 0) {}

GreatCircle::GreatCircle(const PointS3& a, const PointS3& b) {
  e1_ = a.vec();
  Vec4 w = b.vec() - b.dot(a) * e1_;
  const double n = w.norm();
  if (n < 1e-10) throw Error(ErrorCode::InvalidInput, "points do not span a great circle");
  e2_ = w / n;
}

GreatCircle GreatCircle::from_basis(const Vec4& e1, const Vec4& e2, double tol) {
  if (std::abs(e1.norm() - 1) > tol || std::abs(e2.norm() - 1) > tol || std::abs(e1.dot(e2)) > tol) {
    throw Error(ErrorCode::InvalidInput, "circle basis is not orthonormal");
  }
  GreatCircle c;
  c.e1_ = e1;
  c.e2_ = e2;
  return c;
}

PointS3 GreatCircle::point(double angle) const {
  return PointS3(Vec4(std::cos(angle) * e1_ + std::sin(angle) * e2_));
}

Mat4 GreatCircle::projector() const { return e1_ * e1_.transpose() + e2_ * e2_.transpose(); }

GreatCircle GreatCircle::orthocomplement() const {
  std::array<Vec4, 2> f;
  int found = 0;
  std::array<Vec4, 4> basis{e1_, e2_, Vec4::Zero(), Vec4::Zero()};
  int have = 2;
  // Gram-Schmidt over standard axes, taking the largest residual first.
  while (found < 2) {
    double best = -1;
    Vec4 best_w = Vec4::Zero();
    for (int ax = 0; ax < 4; ++ax) {
      Vec4 w = Vec4::Unit(ax);
      for (int r = 0; r < 2; ++r) {
        for (int b = 0; b < have; ++b) w -= w.dot(basis[b]) * basis[b];
      }
      const double n = w.norm();
      if (n > best + 1e-12) {
        best = n;
        best_w = w / n;
      }
    }
    f[found++] = best_w;
    basis[have++] = best_w;
  }
  Mat4 m;
  m << e1_, e2_, f[0], f[1];
  if (m.determinant() < 0) f[1] = -f[1];
  GreatCircle c;
  c.e1_ = f[0];
  c.e2_ = f[1];
  return c;
}

double GreatCircle::distance(const PointS3& p) const {
  const Vec4 a = projector() * p.vec();
  const double na = a.norm();
  const double nb = (p.vec() - a).norm();
  return std::atan2(nb, na);
}

bool GreatCircle::contains(const PointS3& p, double tol) const { return distance(p) <= tol; }

bool GreatCircle::same_set(const GreatCircle& o, double tol) const {
  return (projector() - o.projector()).cwiseAbs().maxCoeff() <= tol;
}

Vec4 GreatCircle::tangent(const Vec4& p) const {
  const Vec4 t = -p.dot(e2_) * e1_ + p.dot(e1_) * e2_;
  return t.normalized();
}

GreatSphere::GreatSphere(const Vec4& normal) {
  const double n = normal.norm();
  if (!(n > 1e-300)) throw Error(ErrorCode::InvalidInput, "zero sphere normal");
  n_ = normal / n;
}

bool GreatSphere::contains(const PointS3& p, double tol) const { return std::abs(n_.dot(p.vec())) <= tol; }

bool GreatSphere::same_set(const GreatSphere& o, double tol) const {
  return std::min((n_ - o.n_).cwiseAbs().maxCoeff(), (n_ + o.n_).cwiseAbs().maxCoeff()) <= tol;
}

GreatCircle circle_C() { return GreatCircle(); }
GreatCircle circle_Cperp() { return circle_C().orthocomplement(); }

GreatSphere sphere_lower(double phi) { return GreatSphere(PointS3::lower(phi + kPi / 2).vec()); }
GreatSphere sphere_upper(double phi) { return GreatSphere(PointS3::upper(phi + kPi / 2).vec()); }

GreatCircle frame_circle(double phi_lower, double phi_upper) {
  return GreatCircle(PointS3::lower(phi_lower), PointS3::upper(phi_upper));
}

Isometry4 reflection(std::span<const Vec4> basis) {
  if (basis.empty() || basis.size() > 3) throw Error(ErrorCode::InvalidInput, "reflection needs 1-3 basis vectors");
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const double target = a == b ? 1.0 : 0.0;
      if (std::abs(basis[a].dot(basis[b]) - target) > 1e-10) {
        throw Error(ErrorCode::InvalidInput, "reflection basis is not orthonormal");
      }
    }
  }
  Mat4 p = Mat4::Zero();
  for (const auto& v : basis) p += v * v.transpose();
  return Isometry4(Mat4(2.0 * p - Mat4::Identity()));
}

Isometry4 reflection(const GreatCircle& c) {
  const std::array<Vec4, 2> b{c.e1(), c.e2()};
  return reflection(b);
}

Isometry4 reflection(const GreatSphere& s) {
  const Vec4& n = s.normal();
  return Isometry4(Mat4(Mat4::Identity() - 2.0 * n * n.transpose()));
}

PointS3 reflect(std::span<const Vec4> basis, const PointS3& p) { return reflection(basis).apply(p); }

Isometry4 rotate_about(const GreatCircle& c, double phi) {
  const GreatCircle perp = c.orthocomplement();
  const Vec4& f1 = perp.e1();
  const Vec4& f2 = perp.e2();
  const Mat4 m = c.projector() + std::cos(phi) * perp.projector() +
                 std::sin(phi) * (f2 * f1.transpose() - f1 * f2.transpose());
  return Isometry4(m);
}

Isometry4 rotate_along(const GreatCircle& c, double phi) { return rotate_about(c.orthocomplement(), phi); }

TangentVector killing_eval(const GreatCircle& c, const PointS3& p) {
  const GreatCircle perp = c.orthocomplement();
  const Vec4& f1 = perp.e1();
  const Vec4& f2 = perp.e2();
  return {p, Vec4(f2 * f1.dot(p.vec()) - f1 * f2.dot(p.vec()))};
}

PointS3 orbit_project(const GreatCircle& c, const PointS3& pole, const PointS3& x) {
  if (!c.contains(pole, 1e-10)) throw Error(ErrorCode::InvalidInput, "pole is not on the circle");
  const Vec4 a = c.projector() * x.vec();
  const Vec4 b = x.vec() - a;
  return PointS3(Vec4(b + a.norm() * pole.vec()));
}

double arc_length(const PointS3& p, const PointS3& q) { return p.distance(q); }

PointS3 geodesic(const PointS3& p, const PointS3& q, double t) {
  const double theta = arc_length(p, q);
  if (theta > kPi - 1e-10) throw Error(ErrorCode::DegenerateGeodesic, "antipodal endpoints");
  if (theta < 1e-300) return p;
  const double s = std::sin(theta);
  return PointS3(Vec4((std::sin((1 - t) * theta) / s) * p.vec() + (std::sin(t * theta) / s) * q.vec()));
}

PointS3 midpoint(const PointS3& p, const PointS3& q) {
  if (arc_length(p, q) > kPi - 1e-10) throw Error(ErrorCode::DegenerateGeodesic, "antipodal endpoints");
  return PointS3(Vec4(p.vec() + q.vec()));
}

CircleIntersection intersect(const GreatCircle& a, const GreatCircle& b, double tol) {
  CircleIntersection out;
  Eigen::Matrix<double, 4, 2> A, B;
  A << a.e1(), a.e2();
  B << b.e1(), b.e2();
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(A.transpose() * B, Eigen::ComputeFullU);
  const Mat4 pb = b.projector();
  int common = 0;
  Vec4 dir = Vec4::Zero();
  for (int s = 0; s < 2; ++s) {
    const Vec4 u = A * svd.matrixU().col(s);
    if ((pb * u - u).norm() <= tol) {
      ++common;
      if (common == 1) dir = u.normalized();
    }
  }
  if (common == 2) {
    out.whole = true;
  } else if (common == 1) {
    out.points = {PointS3(dir), PointS3(Vec4(-dir))};
  }
  return out;
}

CircleIntersection intersect(const GreatSphere& s, const GreatCircle& c, double tol) {
  CircleIntersection out;
  const double a = s.normal().dot(c.e1());
  const double b = s.normal().dot(c.e2());
  if (std::hypot(a, b) <= tol) {
    out.whole = true;
    return out;
  }
  const Vec4 d = (-b * c.e1() + a * c.e2()).normalized();
  out.points = {PointS3(d), PointS3(Vec4(-d))};
  return out;
}

std::optional<GreatCircle> intersect(const GreatSphere& a, const GreatSphere& b, double tol) {
  const Vec4& n1 = a.normal();
  Vec4 w = b.normal() - b.normal().dot(n1) * n1;
  if (w.norm() <= tol) return std::nullopt;
  return GreatCircle::from_basis(n1, w.normalized()).orthocomplement();
}

double line_angle(const Vec4& u, const Vec4& v) {
  const Vec4 a = u.normalized();
  Vec4 b = v.normalized();
  if (a.dot(b) < 0) b = -b;
  return vector_angle(a, b);
}

double intersection_angle(const GreatSphere& a, const GreatSphere& b) { return line_angle(a.normal(), b.normal()); }

double intersection_angle(const GreatCircle& a, const GreatCircle& b, const PointS3& at) {
  return line_angle(a.tangent(at.vec()), b.tangent(at.vec()));
}

double intersection_angle(const GreatSphere& s, const GreatCircle& c, const PointS3& at) {
  return kPi / 2 - line_angle(c.tangent(at.vec()), s.normal());
}

double triangle_area(const Vec4& a, const Vec4& b, const Vec4& c) {
  const double u = a.dot(b), v = b.dot(c), w = c.dot(a);
  const double d = std::max(0.0, 1 + 2 * u * v * w - u * u - v * v - w * w);
  return 2.0 * std::atan2(std::sqrt(d), 1 + u + v + w);
}

Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c) {
  Vec4 n;
  for (int l = 0; l < 4; ++l) {
    Mat4 m;
    m << a, b, c, Vec4::Unit(l);
    n[l] = m.determinant();
  }
  return n;
}

Vec4 triangle_coordinates(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& p) {
  const Vec4 n = cross4(a, b, c).normalized();
  Mat4 m;
  m << a, b, c, n;
  return m.partialPivLu().solve(p);
}

bool in_geodesic_triangle(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& p, double tol) {
  const Vec4 x = triangle_coordinates(a, b, c, p);
  return std::abs(x[3]) <= tol && x[0] >= -tol && x[1] >= -tol && x[2] >= -tol;
}

bool on_arc(const Vec4& a, const Vec4& b, const Vec4& p, double tol) {
  const Vec4 w = (b - b.dot(a) * a).normalized();
  const double x = p.dot(a), y = p.dot(w);
  const Vec4 off = p - x * a - y * w;
  if (off.norm() > tol) return false;
  // p = alpha a + beta b with alpha, beta >= 0
  const double ab = a.dot(b);
  const double beta = y / std::sqrt(std::max(0.0, 1 - ab * ab));
  const double alpha = x - beta * ab;
  return alpha >= -tol && beta >= -tol;
}

SphericalTetrahedron::SphericalTetrahedron(const std::array<PointS3, 4>& v) : v_(v) {
  Mat4 m;
  m << v[0].vec(), v[1].vec(), v[2].vec(), v[3].vec();
  const double d = m.determinant();
  if (!(std::abs(d) > 1e-10)) throw Error(ErrorCode::InvalidTetrahedron, "vertices are linearly dependent");
  inv_ = m.inverse();
}

Membership SphericalTetrahedron::membership(const Vec4& p, double tol) const {
  const Vec4 c = inv_ * p;
  Membership out;
  out.inside = c.minCoeff() >= -tol;
  for (int i = 0; i < 4; ++i) out.coeffs[i] = c[i];
  return out;
}

Membership SphericalTetrahedron::membership(const PointS3& p, double tol) const { return membership(p.vec(), tol); }

double SphericalTetrahedron::edge_length(int edge) const {
  if (edge < 0 || edge > 5) throw Error(ErrorCode::InvalidIndex, "edge index out of range");
  return arc_length(v_[kEdges[edge][0]], v_[kEdges[edge][1]]);
}

double SphericalTetrahedron::dihedral_angle(int edge) const {
  if (edge < 0 || edge > 5) throw Error(ErrorCode::InvalidIndex, "edge index out of range");
  const int a = kEdges[edge][0], b = kEdges[edge][1];
  std::array<int, 2> rest{};
  int r = 0;
  for (int i = 0; i < 4; ++i) {
    if (i != a && i != b) rest[r++] = i;
  }
  const GreatCircle ab(v_[a], v_[b]);
  const Mat4 p = Mat4::Identity() - ab.projector();
  const Vec4 u = p * v_[rest[0]].vec();
  const Vec4 w = p * v_[rest[1]].vec();
  return vector_angle(u.normalized(), w.normalized());
}

PointS3 SphericalTetrahedron::centroid() const {
  return PointS3(Vec4(v_[0].vec() + v_[1].vec() + v_[2].vec() + v_[3].vec()));
}

std::array<int, 3> SphericalTetrahedron::face(int opposite) const {
  std::array<int, 3> f{};
  int n = 0;
  for (int i = 0; i < 4; ++i) {
    if (i != opposite) f[n++] = i;
  }
  return f;
}

namespace {

bool same_mod_pi(double a, double b) {
  const double d = std::remainder(a - b, kPi);
  return std::abs(d) < 1e-12;
}

// Unoriented angle of a line pair whose oriented angle is delta.
double line_angle_of(double delta) {
  const double r = std::abs(std::remainder(delta, kPi));
  return std::min(r, kPi - r);
}

double point_set_distance(const std::vector<PointS3>& got, const std::vector<Vec4>& want) {
  if (got.size() != want.size()) return 1.0;
  double worst = 0;
  for (const auto& w : want) {
    double best = 1e300;
    for (const auto& g : got) best = std::min(best, (g.vec() - w).norm());
    worst = std::max(worst, best);
  }
  return worst;
}

struct Tally {
  GeometryCheck check;
  double tol;
  void add(double residual, const std::string& witness) {
    if (!(residual <= tol)) {
      if (check.pass) check.witness = witness;
      check.pass = false;
    }
    if (!(residual <= check.residual)) check.residual = std::isfinite(residual) ? residual : 1e300;
  }
};

}  // namespace

std::vector<GeometryCheck> basic_geometry_checks(std::span<const std::array<double, 4>> angles, double tol) {
  std::vector<Tally> t;
  const char* names[] = {"antipodal-aliasing",       "frame-circle-meets-C",    "hemisphere-cones",
                         "spheres-as-hemisphere-pairs", "sphere-meets-orthogonal-circle",
                         "frame-circle-as-sphere-intersection", "frame-circle-orthocomplement",
                         "sphere-pencil-angles",     "frame-circle-trichotomy"};
  for (const char* n : names) t.push_back({GeometryCheck{n, 0.0, true, {}}, tol});

  const GreatCircle C = circle_C();
  const GreatCircle Cp = circle_Cperp();

  for (const auto& q : angles) {
    const double phi = q[0], phip = q[1], phi2 = q[2], phip2 = q[3];
    std::ostringstream w;
    w.precision(17);
    w << "phi=" << phi << " phi'=" << phip << " phi2=" << phi2 << " phi2'=" << phip2;
    const std::string wit = w.str();

    // antipodal aliasing of points and spheres
    {
      double r = (PointS3::lower(phi + kPi).vec() + PointS3::lower(phi).vec()).norm();
      r = std::max(r, (PointS3::upper(phi + kPi).vec() + PointS3::upper(phi).vec()).norm());
      r = std::max(r, sphere_lower(phi + kPi).same_set(sphere_lower(phi), tol) ? 0.0 : 1.0);
      r = std::max(r, sphere_upper(phi + kPi).same_set(sphere_upper(phi), tol) ? 0.0 : 1.0);
      t[0].add(r, wit);
    }
    const GreatCircle F = frame_circle(phi, phip);
    // F meets C and C-perp in antipodal pairs, orthogonally, and is the
    // union of four quarter arcs through those points.
    {
      const auto xc = intersect(F, C);
      const auto xp = intersect(F, Cp);
      double r = xc.whole || xp.whole ? 1.0 : 0.0;
      r = std::max(r, point_set_distance(xc.points, {PointS3::lower(phi).vec(), PointS3::lower(phi + kPi).vec()}));
      r = std::max(r, point_set_distance(xp.points, {PointS3::upper(phip).vec(), PointS3::upper(phip + kPi).vec()}));
      for (const auto& p : xc.points) r = std::max(r, std::abs(intersection_angle(F, C, p) - kPi / 2));
      for (const auto& p : xp.points) r = std::max(r, std::abs(intersection_angle(F, Cp, p) - kPi / 2));
      const std::array<PointS3, 5> ring{PointS3::lower(phi), PointS3::upper(phip), PointS3::lower(phi + kPi),
                                        PointS3::upper(phip + kPi), PointS3::lower(phi)};
      for (int s = 0; s < 4; ++s) {
        r = std::max(r, std::abs(arc_length(ring[s], ring[s + 1]) - kPi / 2));
        for (int u = 1; u < 8; ++u) r = std::max(r, F.distance(geodesic(ring[s], ring[s + 1], u / 8.0)));
      }
      t[1].add(r, wit);
    }
    // cones over C / C-perp are hemispheres with the stated poles
    {
      double r = 0;
      const PointS3 pole_u = PointS3::upper(phi);
      const PointS3 pole_l = PointS3::lower(phi);
      for (int u = 0; u <= 8; ++u) {
        for (int v = 0; v < 8; ++v) {
          const double s = kPi / 2 * u / 8.0, a = 2 * kPi * v / 8.0;
          const PointS3 x = geodesic(C.point(a), pole_u, s / (kPi / 2));
          r = std::max(r, std::abs(sphere_upper(phi).signed_distance(x.vec())));
          r = std::max(r, std::abs(arc_length(x, pole_u) - (kPi / 2 - s)));
          const PointS3 y = geodesic(Cp.point(a), pole_l, s / (kPi / 2));
          r = std::max(r, std::abs(sphere_lower(phi).signed_distance(y.vec())));
          r = std::max(r, std::abs(arc_length(y, pole_l) - (kPi / 2 - s)));
        }
      }
      t[2].add(r, wit);
    }
    // each sphere is the union of the two hemispheres over its circle
    {
      double r = 0;
      const GreatSphere su = sphere_upper(phi);
      for (int v = 0; v < 16; ++v) {
        for (int u = 0; u < 8; ++u) {
          // point of su: mix of a C point and p^phi
          const Vec4 x = std::cos(kPi * u / 8.0) * C.point(2 * kPi * v / 16.0).vec() +
                         std::sin(kPi * u / 8.0) * PointS3::upper(phi).vec();
          r = std::max(r, std::abs(su.signed_distance(x)));
          const Vec4 off = x - C.projector() * x;
          // off-C part is a multiple of p^phi or p^{phi+pi}
          r = std::max(r, (off - off.dot(PointS3::upper(phi).vec()) * PointS3::upper(phi).vec()).norm());
        }
      }
      const GreatSphere sl = sphere_lower(phi);
      for (int v = 0; v < 16; ++v) {
        for (int u = 0; u < 8; ++u) {
          const Vec4 x = std::cos(kPi * u / 8.0) * Cp.point(2 * kPi * v / 16.0).vec() +
                         std::sin(kPi * u / 8.0) * PointS3::lower(phi).vec();
          r = std::max(r, std::abs(sl.signed_distance(x)));
          const Vec4 off = x - Cp.projector() * x;
          r = std::max(r, (off - off.dot(PointS3::lower(phi).vec()) * PointS3::lower(phi).vec()).norm());
        }
      }
      t[3].add(r, wit);
    }
    // sphere meets the opposite circle in an antipodal pair, orthogonally
    {
      const auto a = intersect(sphere_upper(phi), Cp);
      const auto b = intersect(sphere_lower(phi), C);
      double r = a.whole || b.whole ? 1.0 : 0.0;
      r = std::max(r, point_set_distance(a.points, {PointS3::upper(phi).vec(), PointS3::upper(phi + kPi).vec()}));
      r = std::max(r, point_set_distance(b.points, {PointS3::lower(phi).vec(), PointS3::lower(phi + kPi).vec()}));
      for (const auto& p : a.points) r = std::max(r, std::abs(intersection_angle(sphere_upper(phi), Cp, p) - kPi / 2));
      for (const auto& p : b.points) r = std::max(r, std::abs(intersection_angle(sphere_lower(phi), C, p) - kPi / 2));
      t[4].add(r, wit);
    }
    // frame circle is the orthogonal intersection of the two spheres
    {
      const auto x = intersect(sphere_lower(phi), sphere_upper(phip));
      double r = x && x->same_set(F, tol) ? 0.0 : 1.0;
      r = std::max(r, std::abs(intersection_angle(sphere_lower(phi), sphere_upper(phip)) - kPi / 2));
      t[5].add(r, wit);
    }
    // orthocomplement of a frame circle
    {
      const GreatCircle G = frame_circle(phi + kPi / 2, phip + kPi / 2);
      t[6].add(F.orthocomplement().same_set(G, tol) ? (F.orthocomplement().projector() - G.projector()).cwiseAbs().maxCoeff() : 1.0, wit);
    }
    // pencils of spheres through C and through C-perp
    {
      double r = 0;
      const double want = line_angle_of(phi2 - phi);
      const auto xu = intersect(sphere_upper(phi), sphere_upper(phi2));
      const auto xl = intersect(sphere_lower(phi), sphere_lower(phi2));
      if (same_mod_pi(phi, phi2)) {
        r = std::max(r, xu ? 1.0 : 0.0);
        r = std::max(r, xl ? 1.0 : 0.0);
        r = std::max(r, sphere_upper(phi).same_set(sphere_upper(phi2), tol) ? 0.0 : 1.0);
        r = std::max(r, sphere_lower(phi).same_set(sphere_lower(phi2), tol) ? 0.0 : 1.0);
      } else {
        r = std::max(r, xu && xu->same_set(C, tol) ? 0.0 : 1.0);
        r = std::max(r, xl && xl->same_set(Cp, tol) ? 0.0 : 1.0);
      }
      r = std::max(r, std::abs(intersection_angle(sphere_upper(phi), sphere_upper(phi2)) - want));
      r = std::max(r, std::abs(intersection_angle(sphere_lower(phi), sphere_lower(phi2)) - want));
      t[7].add(r, wit);
    }
    // intersection pattern of two frame circles
    {
      const GreatCircle F2 = frame_circle(phi2, phip2);
      const auto x = intersect(F, F2);
      const bool first = same_mod_pi(phi, phi2);
      const bool second = same_mod_pi(phip, phip2);
      double r = 0;
      if (first && second) {
        r = x.whole && F.same_set(F2, tol) ? 0.0 : 1.0;
      } else if (first) {
        r = x.whole ? 1.0 : point_set_distance(x.points, {PointS3::lower(phi).vec(), PointS3::lower(phi + kPi).vec()});
        for (const auto& p : x.points) r = std::max(r, std::abs(intersection_angle(F, F2, p) - line_angle_of(phip2 - phip)));
      } else if (second) {
        r = x.whole ? 1.0 : point_set_distance(x.points, {PointS3::upper(phip2).vec(), PointS3::upper(phip2 + kPi).vec()});
        for (const auto& p : x.points) r = std::max(r, std::abs(intersection_angle(F, F2, p) - line_angle_of(phi2 - phi)));
      } else {
        r = x.whole || !x.points.empty() ? 1.0 : 0.0;
      }
      t[8].add(r, wit + " F=" + fmt_vec(F.e1()));
    }
  }
  std::vector<GeometryCheck> out;
  for (auto& x : t) out.push_back(x.check);
  return out;
}

}  // namespace lawson
