#include "lawson/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lawson {

namespace {

constexpr double kPi = std::numbers::pi;

int mod(int a, int n) {
  const int r = a % n;
  return r < 0 ? r + n : r;
}

std::string half(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

std::string vec_str(const Vec4& v) {
  std::ostringstream os;
  os.precision(10);
  os << "(" << v[0] << "," << v[1] << "," << v[2] << "," << v[3] << ")";
  return os.str();
}

Vec4 sample_in_tetra(const SphericalTetrahedron& t, Rng& rng) {
  Vec4 x = Vec4::Zero();
  for (int i = 0; i < 4; ++i) {
    double u = rng.uniform();
    while (u <= 0) u = rng.uniform();
    x += -std::log(u) * t.vertex(i).vec();
  }
  return x.normalized();
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Omega: return "omega";
    case Family::OmegaHalf: return "omega-half";
    case Family::OmegaEven: return "omega-even";
    case Family::OmegaOdd: return "omega-odd";
  }
  return "unknown";
}

std::string to_string(const CellIndex& c) {
  return std::string(to_string(c.family)) + "[" + half(c.i2) + "," + half(c.j2) + "]";
}

void CheckResult::fail(const std::string& w, double r) {
  if (pass) witness = w;
  pass = false;
  residual = std::max(residual, r);
}

void CheckResult::track(double r, double tol, const std::string& w) {
  if (!std::isfinite(r)) r = 1e300;
  if (r > tol) {
    fail(w, r);
  } else {
    residual = std::max(residual, r);
  }
}

Lattice::Lattice(LatticeParams params) : params_(params) {
  if (params.m < 3 || params.k < 2) {
    throw Error(ErrorCode::UnsupportedParameters,
                "need m >= 3 and k >= 2, got m=" + std::to_string(params.m) + " k=" + std::to_string(params.k));
  }
  const int I = 4 * params.m, J = 4 * params.k;
  for (int i2 = 0; i2 < I; ++i2) {
    for (int j2 = 0; j2 < J; ++j2) {
      const bool ie = i2 % 2 == 0, je = j2 % 2 == 0;
      if (ie && je) {
        cells_[0].push_back({Family::Omega, i2, j2});
        const int s = (i2 + j2) / 2;
        if (s % 2 == 0) {
          cells_[2].push_back({Family::OmegaEven, i2, j2});
        } else {
          cells_[3].push_back({Family::OmegaOdd, i2, j2});
        }
      } else if (!ie && !je) {
        cells_[1].push_back({Family::OmegaHalf, i2, j2});
      }
    }
  }
  for (int f = 0; f < 4; ++f) {
    for (const auto& c : cells_[f]) tetras_[f].push_back(tetra(c));
  }
}

PointS3 Lattice::t_lower(int i2) const { return PointS3::lower(lower_angle(i2).wrapped()); }
PointS3 Lattice::t_upper(int j2) const { return PointS3::upper(upper_angle(j2).wrapped()); }

GreatSphere Lattice::sigma_lower(int i2) const {
  return GreatSphere(PointS3::lower((lower_angle(i2) + PiAngle(1, 2)).wrapped()).vec());
}

GreatSphere Lattice::sigma_upper(int j2) const {
  return GreatSphere(PointS3::upper((upper_angle(j2) + PiAngle(1, 2)).wrapped()).vec());
}

GreatCircle Lattice::circle(int i2, int j2) const { return GreatCircle(t_lower(i2), t_upper(j2)); }

std::vector<GreatCircle> Lattice::quad_circles() const {
  std::vector<GreatCircle> out;
  // circles through t_i, t^j and their antipodes: i in [0, m), j in [0, k)
  for (int i2 = 1; i2 < 2 * m(); i2 += 2) {
    for (int j2 = 1; j2 < 2 * k(); j2 += 2) out.push_back(circle(i2, j2));
  }
  return out;
}

std::vector<GreatCircle> Lattice::axis_circles() const {
  std::vector<GreatCircle> out;
  for (int i2 = 0; i2 < 2 * m(); i2 += 2) {
    for (int j2 = 0; j2 < 2 * k(); j2 += 2) out.push_back(circle(i2, j2));
  }
  return out;
}

std::vector<GreatSphere> Lattice::spheres() const {
  std::vector<GreatSphere> out;
  for (int j2 = 0; j2 < 2 * k(); j2 += 2) out.push_back(sigma_upper(j2));
  for (int i2 = 0; i2 < 2 * m(); i2 += 2) out.push_back(sigma_lower(i2));
  return out;
}

const std::vector<CellIndex>& Lattice::cells(Family f) const { return cells_[static_cast<int>(f)]; }

CellIndex Lattice::canonical(const CellIndex& c) const {
  CellIndex out{c.family, mod(c.i2, 4 * m()), mod(c.j2, 4 * k())};
  const bool ie = out.i2 % 2 == 0, je = out.j2 % 2 == 0;
  bool ok = false;
  switch (c.family) {
    case Family::Omega: ok = ie && je; break;
    case Family::OmegaHalf: ok = !ie && !je; break;
    case Family::OmegaEven: ok = ie && je && mod((c.i2 + c.j2) / 2, 2) == 0; break;
    case Family::OmegaOdd: ok = ie && je && mod((c.i2 + c.j2) / 2, 2) == 1; break;
  }
  if (!ok) throw Error(ErrorCode::InvalidIndex, "parity violation for " + to_string(c));
  return out;
}

std::size_t Lattice::cell_position(const CellIndex& c) const {
  const CellIndex n = canonical(c);
  const auto& list = cells(c.family);
  const auto it = std::find(list.begin(), list.end(), n);
  if (it == list.end()) throw Error(ErrorCode::InvalidIndex, "cell not in family: " + to_string(c));
  return static_cast<std::size_t>(it - list.begin());
}

std::array<PointS3, 4> cell_vertices(const Lattice& lat, const CellIndex& c) {
  return {lat.t_lower(c.i2 - 1), lat.t_lower(c.i2 + 1), lat.t_upper(c.j2 - 1), lat.t_upper(c.j2 + 1)};
}

SphericalTetrahedron Lattice::tetra(const CellIndex& c) const {
  return SphericalTetrahedron(cell_vertices(*this, canonical(c)));
}

SphericalTetrahedron Lattice::subtetra(int i2, int j2, int si, int sj) const {
  if (i2 % 2 != 0 || j2 % 2 != 0 || std::abs(si) > 1 || std::abs(sj) > 1) {
    throw Error(ErrorCode::InvalidIndex, "sub-tetrahedra need integer indices and signs in {-1,0,1}");
  }
  std::array<PointS3, 4> v;
  if (si == 0) {
    v[0] = t_lower(i2 - 1);
    v[1] = t_lower(i2 + 1);
  } else {
    v[0] = t_lower(i2);
    v[1] = t_lower(i2 + si);
  }
  if (sj == 0) {
    v[2] = t_upper(j2 - 1);
    v[3] = t_upper(j2 + 1);
  } else {
    v[2] = t_upper(j2);
    v[3] = t_upper(j2 + sj);
  }
  return SphericalTetrahedron(v);
}

std::vector<Isometry4> Lattice::cell_group(const CellIndex& c) const {
  return {Isometry4::identity(), reflection(sigma_lower(c.i2)), reflection(sigma_upper(c.j2)),
          reflection(circle(c.i2, c.j2))};
}

std::vector<Isometry4> Lattice::cell_group_hat(const CellIndex& c) const {
  return {Isometry4::identity(), reflection(circle(c.i2, c.j2))};
}

std::vector<CellIndex> Lattice::locate(const PointS3& p, Family f, double tol) const {
  std::vector<CellIndex> out;
  const auto& list = cells(f);
  const auto& tets = tetras_[static_cast<int>(f)];
  for (std::size_t n = 0; n < list.size(); ++n) {
    if (tets[n].membership(p, tol).inside) out.push_back(list[n]);
  }
  return out;
}

BoundaryParts Lattice::boundary_parts(const CellIndex& c) const {
  const auto v = cell_vertices(*this, canonical(c));
  BoundaryParts b;
  b.plus = {{{v[0], v[2], v[3]}, {v[1], v[2], v[3]}}};
  b.minus = {{{v[0], v[1], v[2]}, {v[0], v[1], v[3]}}};
  b.quad = {{{v[0], v[2]}, {v[2], v[1]}, {v[1], v[3]}, {v[3], v[0]}}};
  b.corners = v;
  return b;
}

CheckResult coverage_check(const Lattice& lat, Family f, std::size_t n, Rng& rng, double interior_tol) {
  CheckResult r;
  const auto& list = lat.cells(f);
  std::vector<SphericalTetrahedron> tets;
  for (const auto& c : list) tets.push_back(lat.tetra(c));
  for (std::size_t s = 0; s < n; ++s) {
    const Vec4 p = rng.unit4();
    int closed = 0, interior = 0;
    for (const auto& t : tets) {
      const double lo = t.coefficients(p).minCoeff();
      if (lo >= -interior_tol) ++closed;
      if (lo > interior_tol) ++interior;
    }
    const bool boundary_point = closed > 1 && interior == 0;
    if (closed == 0 || interior > 1 || (interior == 0 && !boundary_point)) {
      r.fail("point " + vec_str(p) + " lies in " + std::to_string(interior) + " cell interiors", 1.0);
    }
  }
  return r;
}

CheckResult even_odd_partition_check(const Lattice& lat) {
  CheckResult r;
  const auto& all = lat.cells(Family::Omega);
  const auto& ev = lat.cells(Family::OmegaEven);
  const auto& od = lat.cells(Family::OmegaOdd);
  if (ev.size() + od.size() != all.size() || ev.size() != od.size()) r.fail("family sizes do not split evenly");
  for (const auto& c : all) {
    const bool in_e = std::any_of(ev.begin(), ev.end(), [&](const CellIndex& x) { return x.i2 == c.i2 && x.j2 == c.j2; });
    const bool in_o = std::any_of(od.begin(), od.end(), [&](const CellIndex& x) { return x.i2 == c.i2 && x.j2 == c.j2; });
    if (in_e == in_o) r.fail(to_string(c) + " is not in exactly one of the even/odd families");
  }
  return r;
}

CheckResult cell_metrics_check(const Lattice& lat, double tol) {
  CheckResult r;
  const double em = kPi / lat.m(), ek = kPi / lat.k(), q = kPi / 2;
  // edge order (0,1) on C, (2,3) on C-perp, the rest join C to C-perp
  const std::array<double, 6> len{em, q, q, q, q, ek};
  const std::array<double, 6> dih{ek, q, q, q, q, em};
  for (Family f : {Family::Omega, Family::OmegaHalf}) {
    for (const auto& c : lat.cells(f)) {
      const auto t = lat.tetra(c);
      for (int e = 0; e < 6; ++e) {
        r.track(std::abs(t.edge_length(e) - len[e]), tol, to_string(c) + " edge " + std::to_string(e) + " length");
        r.track(std::abs(t.dihedral_angle(e) - dih[e]), tol, to_string(c) + " edge " + std::to_string(e) + " angle");
      }
    }
  }
  return r;
}

CheckResult boundary_parts_check(const Lattice& lat, const CellIndex& c, int samples, Rng& rng) {
  CheckResult r;
  const auto t = lat.tetra(c);
  const auto b = lat.boundary_parts(c);
  const double tol = 1e-10;
  auto in_part = [&](const std::array<std::array<PointS3, 3>, 2>& part, const Vec4& p) {
    for (const auto& tri : part) {
      if (in_geodesic_triangle(tri[0].vec(), tri[1].vec(), tri[2].vec(), p, tol)) return true;
    }
    return false;
  };
  auto on_quad = [&](const Vec4& p) {
    for (const auto& a : b.quad) {
      if (on_arc(a[0].vec(), a[1].vec(), p, tol)) return true;
    }
    return false;
  };
  // Boundary points found by leaving the cell along random chords from the
  // centroid; each must lie on one of the two parts.
  const Vec4 ctr = t.centroid().vec();
  for (int s = 0; s < samples; ++s) {
    Vec4 d = rng.unit4();
    d -= d.dot(ctr) * ctr;
    const Vec4 c0 = t.coefficients(ctr), c1 = t.coefficients(d);
    double exit = 1e300;
    for (int l = 0; l < 4; ++l) {
      if (c1[l] < 0) exit = std::min(exit, -c0[l] / c1[l]);
    }
    if (exit > 1e299) continue;
    const Vec4 p = (ctr + exit * d).normalized();
    const bool plus = in_part(b.plus, p), minus = in_part(b.minus, p);
    if (!plus && !minus) r.fail("boundary point " + vec_str(p) + " outside both parts");
    if (plus && minus && !on_quad(p)) r.fail("point " + vec_str(p) + " in both parts but off the quadrilateral");
  }
  // Points of Q lie in both parts; the quadrilateral arcs have length pi/2.
  for (const auto& a : b.quad) {
    r.track(std::abs(arc_length(a[0], a[1]) - kPi / 2), 1e-12, "quadrilateral arc length");
    for (int s = 0; s <= samples / 4; ++s) {
      const Vec4 p = geodesic(a[0], a[1], rng.uniform()).vec();
      if (!in_part(b.plus, p) || !in_part(b.minus, p)) r.fail("quadrilateral point " + vec_str(p) + " not in both parts");
    }
  }
  for (int i = 0; i < 4; ++i) {
    r.track((b.corners[i].vec() - t.vertex(i).vec()).norm(), tol, "corner set differs from vertex set");
  }
  return r;
}

CheckResult circle_union_check(const Lattice& lat, std::size_t n, Rng& rng, double tol) {
  CheckResult r;
  const auto qc = lat.quad_circles();
  const auto ac = lat.axis_circles();
  std::vector<BoundaryParts> parts;
  for (const auto& c : lat.cells(Family::Omega)) parts.push_back(lat.boundary_parts(c));
  auto on_some_quad = [&](const Vec4& p) {
    for (const auto& b : parts) {
      for (const auto& a : b.quad) {
        if (on_arc(a[0].vec(), a[1].vec(), p, tol)) return true;
      }
    }
    return false;
  };
  auto on_some = [&](const std::vector<GreatCircle>& cs, const PointS3& p) {
    return std::any_of(cs.begin(), cs.end(), [&](const GreatCircle& c) { return c.contains(p, tol); });
  };
  std::vector<GreatSphere> ups, lows;
  for (int j2 = 0; j2 < 2 * lat.k(); j2 += 2) ups.push_back(lat.sigma_upper(j2));
  for (int i2 = 0; i2 < 2 * lat.m(); i2 += 2) lows.push_back(lat.sigma_lower(i2));
  for (std::size_t s = 0; s < n; ++s) {
    // circles of the quadrilateral collection vs. the union of quadrilaterals
    const PointS3 p = qc[rng.index(qc.size())].point(rng.uniform(0, 2 * kPi));
    if (!on_some_quad(p.vec())) r.fail("quadrilateral-circle point " + vec_str(p.vec()) + " is on no quadrilateral");
    const auto& b = parts[rng.index(parts.size())];
    const auto& a = b.quad[rng.index(4)];
    const PointS3 q = geodesic(a[0], a[1], rng.uniform());
    if (!on_some(qc, q)) r.fail("quadrilateral point " + vec_str(q.vec()) + " is on no quadrilateral circle");
    // axes vs. pairwise sphere intersections
    const PointS3 x = ac[rng.index(ac.size())].point(rng.uniform(0, 2 * kPi));
    const bool up = std::any_of(ups.begin(), ups.end(), [&](const GreatSphere& g) { return g.contains(x, tol); });
    const bool lo = std::any_of(lows.begin(), lows.end(), [&](const GreatSphere& g) { return g.contains(x, tol); });
    if (!up || !lo) r.fail("axis point " + vec_str(x.vec()) + " misses the sphere families");
    const auto meet = intersect(ups[rng.index(ups.size())], lows[rng.index(lows.size())]);
    if (!meet) {
      r.fail("upper and lower spheres coincide");
      continue;
    }
    const PointS3 y = meet->point(rng.uniform(0, 2 * kPi));
    if (!on_some(ac, y)) r.fail("sphere intersection point " + vec_str(y.vec()) + " is on no axis");
  }
  return r;
}

bool OrbitReport::pass() const {
  return rotated_copies.pass && subcells.pass && single_arc.pass && quad_orbits.pass && transversal.pass &&
         projected_disc.pass;
}

namespace {

struct Interval {
  double lo, hi;
};

// Feasible angles of A + B cos t + C sin t >= -tol for all rows.
std::vector<Interval> feasible_arcs(const Vec4& A, const Vec4& B, const Vec4& C, double tol, bool& everywhere) {
  std::vector<Interval> cur;
  bool started = false;
  everywhere = false;
  for (int l = 0; l < 4; ++l) {
    const double R = std::hypot(B[l], C[l]);
    const double a = A[l] + tol;
    if (a >= R) continue;
    if (a < -R) return {};
    const double psi = std::atan2(C[l], B[l]);
    const double delta = std::acos(std::clamp(-a / R, -1.0, 1.0));
    const Interval arc{psi - delta, psi + delta};
    if (!started) {
      cur = {arc};
      started = true;
      continue;
    }
    std::vector<Interval> next;
    for (const auto& c : cur) {
      for (int w = -2; w <= 2; ++w) {
        const double lo = std::max(c.lo, arc.lo + 2 * kPi * w);
        const double hi = std::min(c.hi, arc.hi + 2 * kPi * w);
        if (lo <= hi) next.push_back({lo, hi});
      }
    }
    cur = std::move(next);
    if (cur.empty()) return {};
  }
  if (!started) everywhere = true;
  std::sort(cur.begin(), cur.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> merged;
  for (const auto& c : cur) {
    if (!merged.empty() && c.lo <= merged.back().hi + 1e-12) {
      merged.back().hi = std::max(merged.back().hi, c.hi);
    } else {
      merged.push_back(c);
    }
  }
  // join across the 2pi seam
  if (merged.size() > 1 && merged.back().hi - 2 * kPi >= merged.front().lo - 1e-12) {
    merged.front().lo = merged.back().lo - 2 * kPi;
    merged.pop_back();
  }
  return merged;
}

double winding_number(const std::vector<Eigen::Vector2d>& poly, const Eigen::Vector2d& o) {
  double total = 0;
  for (std::size_t s = 0; s < poly.size(); ++s) {
    const Eigen::Vector2d a = poly[s] - o, b = poly[(s + 1) % poly.size()] - o;
    total += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
  }
  return total / (2 * kPi);
}

bool segments_cross(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2, const Eigen::Vector2d& q1,
                    const Eigen::Vector2d& q2) {
  auto orient = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
    return (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
  };
  const double d1 = orient(q1, q2, p1), d2 = orient(q1, q2, p2);
  const double d3 = orient(p1, p2, q1), d4 = orient(p1, p2, q2);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

OrbitReport verify_orbits(const Lattice& lat, const CellIndex& cell, std::size_t n_orbits,
                          std::size_t points_per_orbit, Rng& rng) {
  OrbitReport rep;
  const CellIndex c = lat.canonical(cell);
  if (c.i2 % 2 != 0 || c.j2 % 2 != 0) throw Error(ErrorCode::InvalidIndex, "orbit checks need an integer cell");
  const auto T = lat.tetra(c);
  const GreatCircle axis = lat.axis(c);
  const Mat4 P = axis.projector();
  const Mat4& Minv = T.inverse_matrix();
  const auto parts = lat.boundary_parts(c);
  const PointS3 ti = lat.t_lower(c.i2), tj = lat.t_upper(c.j2);
  const double tol = 1e-12;

  std::vector<SphericalTetrahedron> subs;
  for (int si : {-1, 1}) {
    for (int sj : {-1, 1}) subs.push_back(lat.subtetra(c.i2, c.j2, si, sj));
  }

  // quarter-turn contact points
  for (int sgn : {1, -1}) {
    const Isometry4 R = rotate_along(axis, sgn * kPi / 2);
    const Isometry4 Rinv = R.inverse();
    std::string seen;
    if (T.membership(Rinv.apply(ti)).inside) seen += "t_lower(" + std::to_string(c.i2 / 2) + ")";
    if (T.membership(Rinv.apply(tj)).inside) seen += (seen.empty() ? "" : "+") + std::string("t_upper(") + std::to_string(c.j2 / 2) + ")";
    if (seen.empty()) rep.rotated_copies.fail("no contact point found for quarter turn");
    if (seen.find('+') != std::string::npos) rep.rotated_copies.fail("quarter turn touches both axis points");
    (sgn > 0 ? rep.quarter_turn_plus : rep.quarter_turn_minus) = seen;
  }

  const std::size_t n_quad = n_orbits / 4;
  for (std::size_t o = 0; o < n_orbits; ++o) {
    Vec4 x0;
    const bool through_quad = o >= 1 && o <= n_quad;
    if (o == 0) {
      x0 = T.centroid().vec();
    } else if (through_quad) {
      const auto& a = parts.quad[rng.index(4)];
      x0 = geodesic(a[0], a[1], rng.uniform(0.01, 0.99)).vec();
    } else {
      x0 = sample_in_tetra(T, rng);
    }
    ++rep.orbits;
    const Vec4 a = P * x0;
    const Vec4 b = x0 - a;
    const double rad = a.norm();
    const double th0 = std::atan2(a.dot(axis.e2()), a.dot(axis.e1()));
    const Vec4 A = Minv * b, B = rad * (Minv * axis.e1()), C = rad * (Minv * axis.e2());
    auto orbit_point = [&](double th) { return Vec4(b + rad * (std::cos(th) * axis.e1() + std::sin(th) * axis.e2())); };
    auto coeff = [&](double th) { return Vec4(A + std::cos(th) * B + std::sin(th) * C); };
    const std::string wit = "orbit through " + vec_str(x0);

    bool everywhere = false;
    const auto arcs = feasible_arcs(A, B, C, tol, everywhere);
    if (everywhere) {
      rep.single_arc.fail(wit + " stays inside the cell");
      continue;
    }
    if (arcs.empty()) {
      rep.single_arc.fail(wit + " misses the cell it was sampled from");
      continue;
    }
    ++rep.meeting;
    if (arcs.size() != 1) {
      rep.single_arc.fail(wit + " meets the cell in " + std::to_string(arcs.size()) + " arcs");
      continue;
    }
    const double lo = arcs[0].lo, hi = arcs[0].hi, len = hi - lo;
    // the sampled point itself must be on the arc
    const double off = std::abs(std::remainder(th0 - 0.5 * (lo + hi), 2 * kPi));
    if (off > 0.5 * len + 1e-9) rep.single_arc.fail(wit + " sample point is off its own arc");

    rep.rotated_copies.track(std::max(0.0, len - kPi / 2), 1e-9, wit + " arc longer than a quarter turn");
    for (int s = 0; s < 8; ++s) {
      const double t = kPi / 2 + kPi * (s + 0.5) / 8.0;
      for (int u = 0; u < 16; ++u) {
        const double th = lo + len * u / 15.0;
        for (double sgn : {1.0, -1.0}) {
          if (coeff(th + sgn * t).minCoeff() >= -tol) {
            rep.rotated_copies.fail(wit + " rotated copy overlaps at t=" + std::to_string(t));
          }
        }
      }
    }

    auto active = [&](double th, int& plus, int& minus) {
      const Vec4 cc = coeff(th);
      plus = minus = 0;
      for (int l = 0; l < 4; ++l) {
        if (std::abs(cc[l]) <= 1e-9) (l < 2 ? plus : minus)++;
      }
    };
    int plo, mlo, phi, mhi;
    active(lo, plo, mlo);
    active(hi, phi, mhi);

    if (through_quad) {
      rep.quad_orbits.track(len, 1e-7, wit + " meets the cell in an arc of length " + std::to_string(len));
      if (plo == 0 || mlo == 0) rep.quad_orbits.fail(wit + " contact point is not on both boundary parts");
    } else {
      const bool ok = (plo > 0 && mlo == 0 && mhi > 0 && phi == 0) || (mlo > 0 && plo == 0 && phi > 0 && mhi == 0);
      if (!ok) rep.single_arc.fail(wit + " arc ends are not one on each boundary part");
      const std::size_t n_in = std::max<std::size_t>(points_per_orbit, 4);
      for (std::size_t u = 0; u < n_in; ++u) {
        const double th = lo + len * (u + 0.5) / static_cast<double>(n_in);
        if (coeff(th).minCoeff() <= 0) rep.single_arc.fail(wit + " arc interior touches the boundary");
      }
    }

    // transversality at the ends
    for (double th : {lo, hi}) {
      const Vec4 cc = coeff(th);
      const Vec4 d = -std::sin(th) * B + std::cos(th) * C;
      for (int l = 0; l < 4; ++l) {
        if (std::abs(cc[l]) <= 1e-9) {
          rep.transversal.track(std::abs(d[l]) < 1e-9 ? 1.0 : 0.0, 0.5, wit + " tangential contact with face " + std::to_string(l));
        }
      }
    }

    // sub-tetrahedra: all or nothing
    const std::size_t n_pts = std::max<std::size_t>(points_per_orbit, 2);
    for (const auto& s : subs) {
      std::size_t in = 0;
      for (std::size_t u = 0; u < n_pts; ++u) {
        const double th = lo + len * u / static_cast<double>(n_pts - 1);
        if (s.membership(orbit_point(th), 1e-10).inside) ++in;
      }
      if (in != 0 && in != n_pts) rep.subcells.fail(wit + " splits across a sub-tetrahedron");
    }
  }

  // projected quadrilateral: winding about the pole and simplicity
  const GreatCircle perp = axis.orthocomplement();
  auto proj2 = [&](const PointS3& x) {
    const PointS3 y = orbit_project(axis, ti, x);
    return Eigen::Vector2d(y.vec().dot(perp.e1()), y.vec().dot(perp.e2()));
  };
  std::vector<Eigen::Vector2d> poly;
  const std::size_t per_arc = std::max<std::size_t>(points_per_orbit, 8);
  for (const auto& a : parts.quad) {
    for (std::size_t u = 0; u < per_arc; ++u) poly.push_back(proj2(geodesic(a[0], a[1], u / static_cast<double>(per_arc))));
  }
  const double w = winding_number(poly, proj2(ti));
  rep.projected_disc.track(std::abs(std::abs(w) - 1.0), 1e-9, "winding about the pole is " + std::to_string(w));
  const std::size_t np = poly.size();
  for (std::size_t s = 0; s < np && rep.projected_disc.pass; ++s) {
    for (std::size_t u = s + 2; u < np; ++u) {
      if (s == 0 && u == np - 1) continue;
      if (segments_cross(poly[s], poly[(s + 1) % np], poly[u], poly[(u + 1) % np])) {
        rep.projected_disc.fail("projected quadrilateral self-intersects at segment " + std::to_string(s));
        break;
      }
    }
  }
  for (int s = 0; s < 64; ++s) {
    const Vec4 x = sample_in_tetra(T, rng);
    const double wx = winding_number(poly, proj2(PointS3(x)));
    rep.projected_disc.track(std::abs(std::abs(wx) - 1.0), 1e-6, "interior point " + vec_str(x) + " projects outside");
  }
  return rep;
}

}  // namespace lawson
