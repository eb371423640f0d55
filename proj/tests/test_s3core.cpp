#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "lawson/random.hpp"
#include "lawson/s3core.hpp"

using namespace lawson;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("pi angles reduce and wrap") {
  const PiAngle a(6, 8);
  CHECK(a.num() == 3);
  CHECK(a.den() == 4);
  CHECK(PiAngle(-1, 2).wrapped() == PiAngle(3, 2));
  CHECK(PiAngle(5, 2).wrapped() == PiAngle(1, 2));
  CHECK((PiAngle(1, 3) + PiAngle(1, 6)) == PiAngle(1, 2));
  CHECK(PiAngle(1, 4).radians() == doctest::Approx(kPi / 4));
}

TEST_CASE("points normalize and reject zero") {
  const PointS3 p(3, 0, 4, 0);
  CHECK(p.vec().norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(PointS3(0, 0, 0, 0), Error);
  CHECK(PointS3::lower(0.3).distance(PointS3::lower(0.3).antipode()) == doctest::Approx(kPi));
}

TEST_CASE("isometries must be orthogonal") {
  Mat4 m = Mat4::Identity();
  m(0, 1) = 0.5;
  CHECK_THROWS_AS(Isometry4{m}, Error);
}

TEST_CASE("reflections are involutions fixing their subspace") {
  Rng rng(3);
  for (int trial = 0; trial < 32; ++trial) {
    const GreatCircle c(PointS3(rng.unit4()), PointS3(rng.unit4()));
    const Isometry4 r = reflection(c);
    CHECK((r * r).distance(Isometry4::identity()) < 1e-12);
    CHECK(r.det() == doctest::Approx(1.0));
    const PointS3 on = c.point(rng.uniform(0, 2 * kPi));
    CHECK((r.apply(on.vec()) - on.vec()).norm() < 1e-12);
    const GreatSphere s(rng.unit4());
    const Isometry4 rs = reflection(s);
    CHECK(rs.det() == doctest::Approx(-1.0));
    CHECK((rs.apply(s.normal()) + s.normal()).norm() < 1e-12);
  }
}

TEST_CASE("rotations about and along a circle") {
  Rng rng(4);
  for (int trial = 0; trial < 32; ++trial) {
    const GreatCircle c(PointS3(rng.unit4()), PointS3(rng.unit4()));
    const double phi = rng.uniform(-kPi, kPi);
    const Isometry4 about = rotate_about(c, phi);
    const PointS3 p = c.point(rng.uniform(0, 2 * kPi));
    CHECK((about.apply(p.vec()) - p.vec()).norm() < 1e-12);
    const Isometry4 along = rotate_along(c, phi);
    const double t = rng.uniform(0, 2 * kPi);
    CHECK((along.apply(c.point(t).vec()) - c.point(t + phi).vec()).norm() < 1e-12);
    CHECK(along.det() == doctest::Approx(1.0));
  }
}

TEST_CASE("killing field is tangent and generates rotations along the circle") {
  Rng rng(5);
  const GreatCircle c = circle_C();
  for (int trial = 0; trial < 16; ++trial) {
    const PointS3 p(rng.unit4());
    const TangentVector v = killing_eval(c.orthocomplement(), p);
    CHECK(std::abs(v.dir.dot(p.vec())) < 1e-14);
    const double h = 1e-6;
    const Vec4 fd = (rotate_along(c, h).apply(p.vec()) - rotate_along(c, -h).apply(p.vec())) / (2 * h);
    CHECK((fd - v.dir).norm() < 1e-8);
  }
}

TEST_CASE("orbit projection lands on the hemisphere and is idempotent") {
  Rng rng(6);
  const GreatCircle c = circle_C();
  const PointS3 pole = PointS3::lower(0.4);
  for (int trial = 0; trial < 64; ++trial) {
    const PointS3 x(rng.unit4());
    const PointS3 y = orbit_project(c, pole, x);
    // same orbit: the C-perp component and the norm of the C component agree
    const Mat4 P = c.projector();
    CHECK(((Mat4::Identity() - P) * (y.vec() - x.vec())).norm() < 1e-12);
    CHECK((P * y.vec()).norm() == doctest::Approx((P * x.vec()).norm()));
    CHECK((P * y.vec()).dot(pole.vec()) >= -1e-12);
    CHECK((orbit_project(c, pole, y).vec() - y.vec()).norm() < 1e-12);
  }
  CHECK((orbit_project(c, pole, PointS3::lower(2.0)).vec() - pole.vec()).norm() < 1e-12);
  CHECK_THROWS_AS(orbit_project(c, PointS3::upper(0.0), PointS3::lower(0.0)), Error);
}

TEST_CASE("geodesics and antipodal endpoints") {
  const PointS3 a = PointS3::lower(0.0), b = PointS3::upper(0.0);
  CHECK(arc_length(a, b) == doctest::Approx(kPi / 2));
  CHECK(arc_length(a, midpoint(a, b)) == doctest::Approx(kPi / 4));
  CHECK_THROWS_AS(geodesic(a, a.antipode(), 0.5), Error);
}

TEST_CASE("intersections of circles and spheres") {
  const auto x = intersect(circle_C(), circle_Cperp());
  CHECK(!x.whole);
  CHECK(x.points.empty());
  const auto f = intersect(frame_circle(0.2, 0.7), circle_C());
  CHECK(f.points.size() == 2);
  CHECK(intersect(circle_C(), circle_C()).whole);
  const auto meet = intersect(sphere_lower(0.3), sphere_upper(1.1));
  REQUIRE(meet.has_value());
  CHECK(intersection_angle(sphere_lower(0.0), sphere_lower(kPi / 3)) == doctest::Approx(kPi / 3));
  CHECK(intersection_angle(sphere_lower(0.0), sphere_upper(0.0)) == doctest::Approx(kPi / 2));
}

TEST_CASE("triangle area and the generalized cross product") {
  const Vec4 a(1, 0, 0, 0), b(0, 1, 0, 0), c(0, 0, 1, 0);
  CHECK(triangle_area(a, b, c) == doctest::Approx(kPi / 2));
  const Vec4 n = cross4(a, b, c);
  CHECK(std::abs(n.dot(a)) + std::abs(n.dot(b)) + std::abs(n.dot(c)) < 1e-15);
  Mat4 m;
  m << a, b, c, n;
  CHECK(m.determinant() == doctest::Approx(n.squaredNorm()));
  CHECK(in_geodesic_triangle(a, b, c, Vec4(1, 1, 1, 0).normalized()));
  CHECK(!in_geodesic_triangle(a, b, c, Vec4(-1, 1, 1, 0).normalized()));
}

TEST_CASE("tetrahedron membership uses cone coefficients") {
  const SphericalTetrahedron t({PointS3(1, 0, 0, 0), PointS3(0, 1, 0, 0), PointS3(0, 0, 1, 0), PointS3(0, 0, 0, 1)});
  CHECK(t.membership(Vec4(1, 1, 1, 1).normalized()).inside);
  CHECK(!t.membership(Vec4(-1, 1, 1, 1).normalized()).inside);
  for (int e = 0; e < 6; ++e) {
    CHECK(t.edge_length(e) == doctest::Approx(kPi / 2));
    CHECK(t.dihedral_angle(e) == doctest::Approx(kPi / 2));
  }
  CHECK_THROWS_AS(
      SphericalTetrahedron({PointS3(1, 0, 0, 0), PointS3(0, 1, 0, 0), PointS3(1, 1, 0, 0), PointS3(0, 0, 0, 1)}),
      Error);
}

TEST_CASE("basic C and C-perp geometry holds at sampled angles") {
  Rng rng(7);
  std::vector<std::array<double, 4>> angles(64);
  for (auto& a : angles) {
    for (double& x : a) x = rng.uniform(0, 2 * kPi);
  }
  const auto checks = basic_geometry_checks(angles, 1e-9);
  CHECK(checks.size() == 9);
  for (const auto& c : checks) {
    INFO(c.item << " " << c.witness);
    CHECK(c.pass);
  }
}
