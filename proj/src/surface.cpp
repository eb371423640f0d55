#include "lawson/surface.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <Eigen/Dense>

namespace lawson {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const Vec4& v) {
  std::ostringstream os;
  os.precision(6);
  os << "(" << v[0] << ", " << v[1] << ", " << v[2] << ", " << v[3] << ")";
  return os.str();
}

std::string half_name(const char* base, bool upper, int i2) {
  std::ostringstream os;
  os << base << (upper ? "^" : "_") << "{" << i2 << "/2}";
  return os.str();
}

// Incremental spatial hash for welding.
class WeldGrid {
 public:
  explicit WeldGrid(double tol) : tol_(tol) {}

  int find_or_add(const Vec4& p) {
    const Key base = key(p);
    int best = -1;
    double bd = tol_;
    for (int d = 0; d < 81; ++d) {
      Key k = base;
      int r = d;
      for (int i = 0; i < 4; ++i) {
        k[i] += r % 3 - 1;
        r /= 3;
      }
      const auto it = map_.find(k);
      if (it == map_.end()) continue;
      for (int idx : it->second) {
        const double dist = (pts_[idx] - p).norm();
        if (dist <= bd && (best < 0 || dist < bd || idx < best)) {
          bd = dist;
          best = idx;
        }
      }
    }
    if (best >= 0) return best;
    const int idx = static_cast<int>(pts_.size());
    pts_.push_back(p);
    map_[base].push_back(idx);
    return idx;
  }

  const std::vector<Vec4>& points() const { return pts_; }

 private:
  using Key = std::array<long long, 4>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::size_t h = 1469598103934665603ull;
      for (long long x : k) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
      return h;
    }
  };
  Key key(const Vec4& p) const {
    Key k;
    for (int i = 0; i < 4; ++i) k[i] = static_cast<long long>(std::floor(p[i] / tol_));
    return k;
  }
  double tol_;
  std::vector<Vec4> pts_;
  std::unordered_map<Key, std::vector<int>, KeyHash> map_;
};

Tri sorted_key(Tri t) {
  std::sort(t.begin(), t.end());
  return t;
}

bool has_directed(const Tri& t, int a, int b) {
  for (int i = 0; i < 3; ++i) {
    if (t[i] == a && t[(i + 1) % 3] == b) return true;
  }
  return false;
}

void check_manifold(const std::unordered_map<Edge, std::vector<int>, EdgeHash>& ef, const TriMeshS3& m,
                    ErrorCode code) {
  for (const auto& [e, faces] : ef) {
    if (faces.size() > 2) {
      throw Error(code, "edge with " + std::to_string(faces.size()) + " triangles at " +
                            fmt((m.vertices[e.a] + m.vertices[e.b]).normalized()));
    }
  }
}

// Tangent basis orthogonal to x and n.
std::pair<Vec4, Vec4> tangent_frame(const Vec4& x, const Vec4& n) {
  std::array<Vec4, 2> out;
  int found = 0;
  for (int i = 0; i < 4 && found < 2; ++i) {
    Vec4 e = Vec4::Unit(i);
    e -= e.dot(x) * x + e.dot(n) * n;
    for (int j = 0; j < found; ++j) e -= e.dot(out[j]) * out[j];
    if (e.norm() > 0.3) out[found++] = e.normalized();
  }
  return {out[0], out[1]};
}

}  // namespace

bool orient_consistently(TriMeshS3& m) {
  const auto ef = edge_faces(m);
  std::vector<int> state(m.triangles.size(), 0);  // 0 unvisited, 1 visited
  bool ok = true;
  for (std::size_t seed = 0; seed < m.triangles.size(); ++seed) {
    if (state[seed]) continue;
    state[seed] = 1;
    std::deque<int> queue{static_cast<int>(seed)};
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop_front();
      const Tri t = m.triangles[f];
      for (int s = 0; s < 3; ++s) {
        const int a = t[s], b = t[(s + 1) % 3];
        for (int g : ef.at(make_edge(a, b))) {
          if (g == f) continue;
          const bool consistent = has_directed(m.triangles[g], b, a);
          if (state[g]) {
            if (!consistent) ok = false;
            continue;
          }
          if (!consistent) std::swap(m.triangles[g][1], m.triangles[g][2]);
          state[g] = 1;
          queue.push_back(g);
        }
      }
    }
  }
  return ok;
}

ClosedSurfaceMesh assemble(const Lattice& lat, const TriMeshS3& disc, const FiniteGroup& quad, double weld_tol) {
  if (disc.triangles.empty()) throw Error(ErrorCode::InvalidMesh, "empty disc");
  ClosedSurfaceMesh out;
  const CellIndex base{Family::Omega, 0, 0};
  const Vec4 centroid = lat.tetra(base).centroid().vec();
  WeldGrid grid(weld_tol);
  for (std::size_t g = 0; g < quad.order(); ++g) {
    const Isometry4& el = quad.element(g);
    const auto cells = lat.locate(PointS3(el.apply(centroid)), Family::OmegaEven);
    if (cells.size() != 1) {
      throw Error(ErrorCode::InvalidMesh, "copy " + std::to_string(g) + " does not land in a single cell");
    }
    const SphericalTetrahedron tet = lat.tetra(cells[0]);
    std::vector<int> map(disc.vertices.size());
    for (std::size_t v = 0; v < disc.vertices.size(); ++v) {
      const Vec4 p = el.apply(disc.vertices[v]);
      out.max_cell_violation = std::max(out.max_cell_violation, -tet.coefficients(p).minCoeff());
      map[v] = grid.find_or_add(p);
    }
    const bool flip = el.det() < 0;
    for (const auto& t : disc.triangles) {
      Tri n{map[t[0]], map[t[1]], map[t[2]]};
      if (flip) std::swap(n[1], n[2]);
      if (n[0] == n[1] || n[1] == n[2] || n[0] == n[2]) {
        throw Error(ErrorCode::WeldFailure, "triangle collapsed by welding in copy " + std::to_string(g));
      }
      out.mesh.triangles.push_back(n);
      out.triangle_copy.push_back(static_cast<int>(g));
    }
    out.copy_cells.push_back(cells[0]);
    out.copy_element.push_back(g);
  }
  out.mesh.vertices = grid.points();
  out.mesh.boundary.assign(out.mesh.vertices.size(), 0);
  out.mesh.orbit_tag.assign(out.mesh.vertices.size(), -1);

  const auto ef = edge_faces(out.mesh);
  check_manifold(ef, out.mesh, ErrorCode::InvalidMesh);
  for (const auto& [e, faces] : ef) {
    if (faces.size() == 1) {
      throw Error(ErrorCode::WeldFailure,
                  "open edge after welding at " + fmt((out.mesh.vertices[e.a] + out.mesh.vertices[e.b]).normalized()));
    }
  }
  if (!orient_consistently(out.mesh)) throw Error(ErrorCode::Topology, "assembled surface is not orientable");
  return out;
}

Topology topology(const TriMeshS3& m) {
  Topology t;
  const auto ef = edge_faces(m);
  check_manifold(ef, m, ErrorCode::InvalidMesh);
  std::vector<char> used(m.vertices.size(), 0);
  for (const auto& tri : m.triangles) {
    for (int v : tri) used[v] = 1;
  }
  t.vertices = std::count(used.begin(), used.end(), 1);
  t.edges = static_cast<long>(ef.size());
  t.faces = static_cast<long>(m.triangles.size());
  t.chi = t.vertices - t.edges + t.faces;
  t.boundary_loops = static_cast<int>(boundary_loops(m).size());
  t.connected = connected_components(m) == 1;
  TriMeshS3 copy = m;
  t.orientable = orient_consistently(copy);
  t.genus = t.orientable ? (2 - t.chi - t.boundary_loops) / 2 : 2 - t.chi - t.boundary_loops;
  return t;
}

TriMeshS3 round_sphere_mesh(int level) {
  TriMeshS3 m;
  m.vertices = {Vec4(1, 0, 0, 0), Vec4(-1, 0, 0, 0), Vec4(0, 1, 0, 0),
                Vec4(0, -1, 0, 0), Vec4(0, 0, 1, 0), Vec4(0, 0, -1, 0)};
  m.triangles = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4}, {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  m.boundary.assign(6, 0);
  m.orbit_tag.assign(6, -1);
  for (int l = 0; l < level; ++l) m = subdivide(m);
  return m;
}

SymmetryReport symmetry_check(const TriMeshS3& mesh, const FiniteGroup& group, double radius) {
  SymmetryReport rep;
  const VertexIndex index(mesh.vertices, radius);
  const auto normals = vertex_normals(mesh);
  std::map<Tri, std::size_t> triangles;
  for (std::size_t f = 0; f < mesh.triangles.size(); ++f) triangles.emplace(sorted_key(mesh.triangles[f]), f);
  std::vector<char> used(mesh.vertices.size(), 0);
  for (const auto& t : mesh.triangles) {
    for (int v : t) used[v] = 1;
  }
  for (const auto& g : group.elements()) {
    ElementSymmetry es;
    std::vector<int> perm(mesh.vertices.size(), -1);
    double sides = 0.0;
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
      if (!used[v]) continue;
      const Vec4 p = g.apply(mesh.vertices[v]);
      int w = index.nearest(p, radius);
      if (w < 0) {
        double bd = 1e300;
        for (std::size_t u = 0; u < mesh.vertices.size(); ++u) {
          const double d = (mesh.vertices[u] - p).norm();
          if (used[u] && d < bd) {
            bd = d;
            w = static_cast<int>(u);
          }
        }
      }
      perm[v] = w;
      es.deviation = std::max(es.deviation, (mesh.vertices[w] - p).norm());
      sides += normals[w].dot(g.apply(normals[v]));
    }
    long same = 0, reversed = 0;
    for (const auto& t : mesh.triangles) {
      const Tri image{perm[t[0]], perm[t[1]], perm[t[2]]};
      const auto it = triangles.find(sorted_key(image));
      if (it == triangles.end()) continue;
      if (has_directed(mesh.triangles[it->second], image[0], image[1])) {
        ++same;
      } else {
        ++reversed;
      }
    }
    es.preserves_sides = sides > 0;
    es.preserves_orientation = same > reversed;
    rep.max_deviation = std::max(rep.max_deviation, es.deviation);
    rep.elements.push_back(es);
  }
  return rep;
}

CheckResult axis_meet_check(const TriMeshS3& mesh, const Lattice& lat, double tol) {
  CheckResult r;
  std::vector<Vec4> points;
  std::vector<std::string> names;
  for (int i2 = 1; i2 < 4 * lat.m(); i2 += 2) {
    points.push_back(lat.t_lower(i2).vec());
    names.push_back(half_name("t", false, i2));
  }
  for (int j2 = 1; j2 < 4 * lat.k(); j2 += 2) {
    points.push_back(lat.t_upper(j2).vec());
    names.push_back(half_name("t", true, j2));
  }
  std::vector<char> hit(points.size(), 0);
  const GreatCircle c = circle_C(), cp = circle_Cperp();
  for (const auto& v : mesh.vertices) {
    const PointS3 p(v);
    if (c.distance(p) > tol && cp.distance(p) > tol) continue;
    bool matched = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if ((points[i] - v).norm() <= tol) {
        hit[i] = 1;
        matched = true;
      }
    }
    if (!matched) r.fail("vertex on C or C-perp away from the half-integer points: " + fmt(v));
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!hit[i]) r.fail("no vertex at " + names[i]);
  }
  // Edges may not cross the axes between vertices.
  for (const auto& e : sorted_edges(mesh)) {
    const Vec4& a = mesh.vertices[e.a];
    const Vec4& b = mesh.vertices[e.b];
    for (const GreatCircle* circ : {&c, &cp}) {
      const GreatCircle perp = circ->orthocomplement();
      const Eigen::Vector2d pa(a.dot(perp.e1()), a.dot(perp.e2()));
      const Eigen::Vector2d pb(b.dot(perp.e1()), b.dot(perp.e2()));
      const double cr = pa.x() * pb.y() - pa.y() * pb.x();
      const double scale = pa.norm() * pb.norm();
      if (pa.norm() <= tol || pb.norm() <= tol) continue;
      if (std::abs(cr) <= 1e-12 * scale && pa.dot(pb) < 0) {
        r.fail("edge crosses an axis between " + fmt(a) + " and " + fmt(b));
      }
    }
  }
  return r;
}

CheckResult quad_circles_check(const TriMeshS3& mesh, const Lattice& lat, double tol) {
  CheckResult r;
  const auto ef = edge_faces(mesh);
  for (const auto& circ : lat.quad_circles()) {
    std::vector<std::pair<double, int>> on;
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
      const Vec4& x = mesh.vertices[v];
      if (circ.distance(PointS3(x)) <= tol) on.push_back({std::atan2(x.dot(circ.e2()), x.dot(circ.e1())), static_cast<int>(v)});
    }
    if (on.size() < 3) {
      r.fail("quadrilateral circle through " + fmt(circ.e1()) + " has too few vertices");
      continue;
    }
    std::sort(on.begin(), on.end());
    double max_gap = 0.0;
    for (std::size_t i = 0; i < on.size(); ++i) {
      const auto& [a0, va] = on[i];
      const auto& [b0, vb] = on[(i + 1) % on.size()];
      const double gap = i + 1 == on.size() ? b0 + 2 * kPi - a0 : b0 - a0;
      max_gap = std::max(max_gap, gap);
      if (!ef.count(make_edge(va, vb))) {
        r.fail("consecutive vertices on a quadrilateral circle are not joined: " + fmt(mesh.vertices[va]));
        break;
      }
    }
    r.residual = std::max(r.residual, max_gap);
  }
  return r;
}

double curvature_gap(const TriMeshS3& mesh, const std::vector<std::vector<int>>& neighbors,
                     const std::vector<Vec4>& normals, int v) {
  const Vec4& x = mesh.vertices[v];
  const Vec4& n = normals[v];
  std::set<int> ring;
  for (int a : neighbors[v]) {
    ring.insert(a);
    for (int b : neighbors[a]) ring.insert(b);
  }
  ring.erase(v);
  const auto [t1, t2] = tangent_frame(x, n);
  Eigen::MatrixXd A(ring.size(), 5);
  Eigen::VectorXd h(ring.size());
  int row = 0;
  for (int w : ring) {
    const Vec4& y = mesh.vertices[w];
    const Vec4 g = y / x.dot(y) - x;
    const double u = g.dot(t1), s = g.dot(t2);
    A.row(row) << u * u, u * s, s * s, u, s;
    h[row] = g.dot(n);
    ++row;
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(h);
  const double d = c[3], e = c[4];
  Eigen::Matrix2d first, second;
  first << 1 + d * d, d * e, d * e, 1 + e * e;
  second << 2 * c[0], c[1], c[1], 2 * c[2];
  second /= std::sqrt(1 + d * d + e * e);
  const Eigen::Matrix2d shape = first.inverse() * second;
  const double tr = shape.trace(), det = shape.determinant();
  return std::sqrt(std::max(0.0, tr * tr - 4 * det));
}

UmbilicReport umbilic_probe(const TriMeshS3& mesh, const Lattice& lat, std::size_t samples, Rng& rng, double tol) {
  UmbilicReport rep;
  const auto neighbors = vertex_neighbors(mesh);
  const auto normals = vertex_normals(mesh);
  const VertexIndex index(mesh.vertices, std::max(tol, 1e-9));
  auto locate_vertex = [&](const Vec4& p, const std::string& name) {
    const int v = index.nearest(p, tol);
    if (v < 0) throw Error(ErrorCode::ProbeMiss, "no mesh vertex at " + name);
    return v;
  };
  const int m = lat.m(), k = lat.k();
  for (int j2 = 1; j2 < 4 * k; j2 += 2) {
    const std::string name = half_name("t", true, j2);
    rep.candidate_names.push_back(name);
    rep.candidate_stat.push_back(curvature_gap(mesh, neighbors, normals, locate_vertex(lat.t_upper(j2).vec(), name)));
  }
  for (int i2 = 1; i2 < 4 * m; i2 += 2) {
    const std::string name = half_name("t", false, i2);
    const double s = curvature_gap(mesh, neighbors, normals, locate_vertex(lat.t_lower(i2).vec(), name));
    if (k > 2) {
      rep.candidate_names.push_back(name);
      rep.candidate_stat.push_back(s);
    } else {
      rep.control_names.push_back(name);
      rep.control_stat.push_back(s);
    }
  }
  rep.expected_count = k == 2 ? 4 : static_cast<std::size_t>(2 * k + 2 * m);
  const long genus = static_cast<long>(m - 1) * (k - 1);
  rep.total_degree_target = 4 * genus - 4;

  std::vector<int> pool;
  for (const auto& t : mesh.triangles) pool.insert(pool.end(), t.begin(), t.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  for (std::size_t s = 0; s < samples; ++s) {
    rep.sample_stat.push_back(curvature_gap(mesh, neighbors, normals, pool[rng.index(pool.size())]));
  }
  std::vector<double> sorted = rep.sample_stat;
  std::sort(sorted.begin(), sorted.end());
  rep.percentile5 = sorted.empty() ? 0.0 : sorted[sorted.size() / 20];

  rep.pass = rep.candidate_names.size() == rep.expected_count && !sorted.empty();
  if (rep.candidate_names.size() != rep.expected_count) {
    rep.witness = "candidate count " + std::to_string(rep.candidate_names.size()) + " != " +
                  std::to_string(rep.expected_count);
  }
  for (std::size_t i = 0; i < rep.candidate_stat.size(); ++i) {
    if (!(rep.candidate_stat[i] < rep.percentile5)) {
      if (rep.pass) {
        std::ostringstream os;
        os << rep.candidate_names[i] << " statistic " << rep.candidate_stat[i] << " >= 5th percentile "
           << rep.percentile5;
        rep.witness = os.str();
      }
      rep.pass = false;
    }
  }
  return rep;
}

std::string classify_crossings(const std::array<int, 6>& counts) {
  const auto& E = SphericalTetrahedron::kEdges;
  int total = 0, distinct = 0, doubled = -1;
  std::vector<int> missed;
  for (int e = 0; e < 6; ++e) {
    total += counts[e];
    if (counts[e] > 0) ++distinct;
    if (counts[e] == 0) missed.push_back(e);
    if (counts[e] == 2) doubled = e;
  }
  auto vertex_set = [&](std::initializer_list<int> edges) {
    std::set<int> s;
    for (int e : edges) {
      s.insert(E[e][0]);
      s.insert(E[e][1]);
    }
    return s;
  };
  if (total == 4 && distinct == 4 && missed.size() == 2) {
    const bool opposite = vertex_set({missed[0], missed[1]}).size() == 4;
    // edge 0 lies on C and edge 5 on C-perp
    const bool off_axes = std::none_of(missed.begin(), missed.end(), [](int e) { return e == 0 || e == 5; });
    if (opposite && off_axes) return "quadrilateral";
  }
  if (total == 5 && distinct == 4 && missed.size() == 2 && doubled >= 0) {
    if (vertex_set({missed[0], missed[1], doubled}).size() == 3) return "pentagon";
  }
  return "other";
}

LedgerReport ledger(const TriMeshS3& mesh, const Lattice& lat) {
  LedgerReport rep;
  rep.all_quadrilateral = true;
  const double tol = 1e-9;
  const double k = lat.k(), m = lat.m();
  for (const auto& cell : lat.cells(Family::OmegaHalf)) {
    const SphericalTetrahedron tet = lat.tetra(cell);
    const Mat4& inv = tet.inverse_matrix();
    std::array<Vec4, 4> planes;
    for (int i = 0; i < 4; ++i) planes[i] = inv.row(i).transpose();
    const TriMeshS3 piece = clip(mesh, planes);
    CellLedger cl;
    cl.cell = cell;
    if (piece.triangles.empty()) {
      cl.classification = "other";
      rep.all_quadrilateral = false;
      rep.max_residual = std::max(rep.max_residual, 1.0);
      rep.cells.push_back(cl);
      continue;
    }
    check_manifold(edge_faces(piece), piece, ErrorCode::CutError);
    cl.chi = euler_characteristic(piece);
    const auto loops = boundary_loops(piece);
    cl.b_tilde = static_cast<int>(loops.size());
    cl.g_tilde = static_cast<int>(2 - cl.chi - cl.b_tilde);
    bool corner_hit = false;
    for (const auto& loop : loops) {
      const std::size_t n = loop.size();
      for (std::size_t i = 0; i < n; ++i) {
        const Vec4& p = piece.vertices[loop[i]];
        const Vec4 c = tet.coefficients(p);
        std::vector<int> zero;
        for (int l = 0; l < 4; ++l) {
          if (std::abs(c[l]) <= tol) zero.push_back(l);
        }
        if (zero.size() < 2) continue;
        if (zero.size() > 2) {
          corner_hit = true;
          continue;
        }
        std::array<int, 2> ends{};
        int q = 0;
        for (int l = 0; l < 4; ++l) {
          if (l != zero[0] && l != zero[1]) ends[q++] = l;
        }
        Crossing cr;
        cr.point = p;
        for (int e = 0; e < 6; ++e) {
          if (SphericalTetrahedron::kEdges[e][0] == ends[0] && SphericalTetrahedron::kEdges[e][1] == ends[1]) cr.edge = e;
        }
        cr.theta = tet.dihedral_angle(cr.edge);
        const Vec4& a = piece.vertices[loop[(i + n - 1) % n]];
        const Vec4& b = piece.vertices[loop[(i + 1) % n]];
        const Vec4 ua = (a - a.dot(p) * p).normalized();
        const Vec4 ub = (b - b.dot(p) * p).normalized();
        cr.corner_angle = std::acos(std::clamp(ua.dot(ub), -1.0, 1.0));
        ++cl.edge_counts[cr.edge];
        cl.crossings.push_back(cr);
      }
    }
    double sum = 0.0, measured = 0.0;
    for (const auto& cr : cl.crossings) {
      sum += kPi - cr.theta;
      measured += kPi - cr.corner_angle;
    }
    cl.expected = (5.0 - 2.0 * cl.g_tilde - 2.0 * cl.b_tilde - 1.0 / k - 1.0 / m) * kPi;
    cl.residual = std::abs(sum - cl.expected);
    cl.measured_residual = std::abs(measured - cl.expected);
    cl.classification = corner_hit || cl.b_tilde != 1 || cl.g_tilde != 0 ? "other" : classify_crossings(cl.edge_counts);
    rep.all_quadrilateral = rep.all_quadrilateral && cl.classification == "quadrilateral";
    rep.max_residual = std::max(rep.max_residual, cl.residual);
    rep.max_measured_residual = std::max(rep.max_measured_residual, cl.measured_residual);
    rep.cells.push_back(std::move(cl));
  }
  return rep;
}

}  // namespace lawson
