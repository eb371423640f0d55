#include "lawson/plateau.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SparseCholesky>

namespace lawson {

namespace {

constexpr double kPi = std::numbers::pi;

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

// Spherical triangle area and its partial derivatives in the pairwise dot
// products u = a.b, v = b.c, w = c.a, evaluated from edge differences to keep
// precision on small triangles.
struct TriangleTerms {
  double area = 0, du = 0, dv = 0, dw = 0;
};

TriangleTerms triangle_terms(const Vec4& a, const Vec4& b, const Vec4& c, bool with_derivatives) {
  const Vec4 ab = b - a, bc = c - b, ca = a - c;
  const double u = 1.0 - 0.5 * ab.squaredNorm();
  const double v = 1.0 - 0.5 * bc.squaredNorm();
  const double w = 1.0 - 0.5 * ca.squaredNorm();
  const double s = cross4(a, ab, -ca).norm();
  const double n = 1.0 + u + v + w;
  TriangleTerms t;
  t.area = 2.0 * std::atan2(s, n);
  if (!with_derivatives || s <= 0) return t;
  const double den = n * n + s * s;
  // vw - u = -(a - w c).(b - v c) and cyclic versions.
  const double qu = -(a - w * c).dot(b - v * c);
  const double qv = -(b - u * a).dot(c - w * a);
  const double qw = -(c - v * b).dot(a - u * b);
  t.du = 2.0 * (n * qu / s - s) / den;
  t.dv = 2.0 * (n * qv / s - s) / den;
  t.dw = 2.0 * (n * qw / s - s) / den;
  return t;
}

std::vector<double> lumped_mass(const TriMeshS3& mesh) {
  std::vector<double> mass(mesh.vertices.size(), 0.0);
  for (const auto& t : mesh.triangles) {
    const double a = triangle_terms(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]], false).area;
    for (int v : t) mass[v] += a / 3.0;
  }
  return mass;
}

const CellIndex kDiscCell{Family::Omega, 0, 0};

double distance_to_arc(const Vec4& a, const Vec4& b, const Vec4& p) {
  const GreatCircle c(PointS3{a}, PointS3{b});
  const Vec4 proj = c.projector() * p;
  const double best = std::min((p - a).norm(), (p - b).norm());
  if (proj.norm() > 1e-12 && on_arc(a, b, proj.normalized(), 1e-9)) {
    return std::min(best, c.distance(PointS3{p}));
  }
  return 2.0 * std::asin(std::min(1.0, best / 2.0));
}

}  // namespace

TriMeshS3 initial_disc(const Lattice& lat, int level) {
  if (level < 0) throw Error(ErrorCode::InvalidInput, "level must be non-negative");
  TriMeshS3 m;
  m.vertices = {lat.t_lower(-1).vec(), lat.t_lower(1).vec(), lat.t_upper(-1).vec(), lat.t_upper(1).vec()};
  m.triangles = {{0, 1, 2}, {1, 0, 3}};
  m.boundary = {1, 1, 1, 1};
  m.orbit_tag.assign(4, -1);
  for (int l = 0; l < level; ++l) m = subdivide(m);
  return m;
}

std::vector<std::vector<int>> symmetry_permutations(const TriMeshS3& mesh, const std::vector<Isometry4>& group,
                                                    double tol) {
  const VertexIndex index(mesh.vertices, std::max(tol, 1e-9));
  std::vector<std::vector<int>> perm;
  for (const auto& g : group) {
    std::vector<int> p(mesh.vertices.size());
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
      p[v] = index.nearest(g.apply(mesh.vertices[v]), std::max(tol, 1e-9));
      if (p[v] < 0) throw Error(ErrorCode::InvalidInput, "mesh is not invariant under the symmetry group");
    }
    perm.push_back(std::move(p));
  }
  return perm;
}

double symmetry_deviation(const TriMeshS3& mesh, const std::vector<Isometry4>& group,
                          const std::vector<std::vector<int>>& perm) {
  double dev = 0;
  for (std::size_t g = 0; g < group.size(); ++g) {
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
      dev = std::max(dev, (group[g].apply(mesh.vertices[v]) - mesh.vertices[perm[g][v]]).norm());
    }
  }
  return dev;
}

double mesh_area(const TriMeshS3& mesh) {
  std::vector<double> a(mesh.triangles.size());
  for (std::size_t f = 0; f < a.size(); ++f) {
    const auto& t = mesh.triangles[f];
    a[f] = triangle_terms(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]], false).area;
  }
  return pairwise_sum(a.data(), a.size());
}

std::vector<Vec4> area_gradient(const TriMeshS3& mesh) {
  std::vector<Vec4> g(mesh.vertices.size(), Vec4::Zero());
  for (const auto& t : mesh.triangles) {
    const Vec4& a = mesh.vertices[t[0]];
    const Vec4& b = mesh.vertices[t[1]];
    const Vec4& c = mesh.vertices[t[2]];
    const TriangleTerms d = triangle_terms(a, b, c, true);
    g[t[0]] += d.du * b + d.dw * c;
    g[t[1]] += d.du * a + d.dv * c;
    g[t[2]] += d.dv * b + d.dw * a;
  }
  return g;
}

std::vector<double> mean_curvature_residuals(const TriMeshS3& mesh) {
  const std::size_t n = mesh.vertices.size();
  std::vector<Vec4> lap(n, Vec4::Zero());
  std::vector<double> hsum(n, 0.0);
  std::vector<int> hcount(n, 0);
  for (const auto& t : mesh.triangles) {
    for (int s = 0; s < 3; ++s) {
      const int o = t[s], p = t[(s + 1) % 3], q = t[(s + 2) % 3];
      const Vec4 e1 = mesh.vertices[p] - mesh.vertices[o];
      const Vec4 e2 = mesh.vertices[q] - mesh.vertices[o];
      const double dot = e1.dot(e2);
      const double cr = std::sqrt(std::max(0.0, e1.squaredNorm() * e2.squaredNorm() - dot * dot));
      const double w = cr > 0 ? 0.5 * dot / cr : 0.0;
      const Vec4 d = mesh.vertices[q] - mesh.vertices[p];
      lap[p] += w * d;
      lap[q] -= w * d;
      const double len = e1.norm();
      hsum[o] += len;
      hsum[p] += len;
      hcount[o] += 1;
      hcount[p] += 1;
    }
  }
  const auto normals = vertex_normals(mesh);
  std::vector<double> r(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    if ((v < mesh.boundary.size() && mesh.boundary[v]) || hcount[v] == 0) continue;
    const double h = hsum[v] / hcount[v];
    r[v] = std::abs(normals[v].dot(lap[v])) / (h * h);
  }
  return r;
}

double boundary_deviation(const TriMeshS3& mesh, const Lattice& lat) {
  const auto parts = lat.boundary_parts(kDiscCell);
  double dev = 0;
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    if (!mesh.boundary[v]) continue;
    double best = 1e300;
    for (const auto& arc : parts.quad) best = std::min(best, distance_to_arc(arc[0].vec(), arc[1].vec(), mesh.vertices[v]));
    dev = std::max(dev, best);
  }
  return dev;
}

double containment_violation(const TriMeshS3& mesh, const Lattice& lat) {
  const SphericalTetrahedron t = lat.tetra(kDiscCell);
  double worst = 0;
  for (const auto& x : mesh.vertices) worst = std::max(worst, -t.coefficients(x).minCoeff());
  return worst;
}

namespace {

Eigen::SparseMatrix<double> cotan_stiffness(const TriMeshS3& mesh, const std::vector<int>& slot, int ni) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.triangles.size() * 12);
  for (const auto& t : mesh.triangles) {
    for (int s = 0; s < 3; ++s) {
      const int o = t[s], p = t[(s + 1) % 3], q = t[(s + 2) % 3];
      const Vec4 e1 = mesh.vertices[p] - mesh.vertices[o];
      const Vec4 e2 = mesh.vertices[q] - mesh.vertices[o];
      const double dot = e1.dot(e2);
      const double cr = std::sqrt(std::max(0.0, e1.squaredNorm() * e2.squaredNorm() - dot * dot));
      const double w = cr > 0 ? 0.5 * dot / cr : 0.0;
      if (slot[p] >= 0) trip.emplace_back(slot[p], slot[p], w);
      if (slot[q] >= 0) trip.emplace_back(slot[q], slot[q], w);
      if (slot[p] >= 0 && slot[q] >= 0) {
        trip.emplace_back(slot[p], slot[q], -w);
        trip.emplace_back(slot[q], slot[p], -w);
      }
    }
  }
  Eigen::SparseMatrix<double> K(ni, ni);
  K.setFromTriplets(trip.begin(), trip.end());
  return K;
}

}  // namespace

LevelStats minimize(TriMeshS3& mesh, const std::vector<Isometry4>& group, const GreatCircle& axis,
                    const SolverOptions& opts, bool* monotone) {
  const std::size_t n = mesh.vertices.size();
  const auto perm = symmetry_permutations(mesh, group);
  std::vector<Isometry4> inv;
  for (const auto& g : group) inv.push_back(g.inverse());
  std::vector<int> interior;
  for (std::size_t v = 0; v < n; ++v) {
    if (!mesh.boundary[v]) interior.push_back(static_cast<int>(v));
  }
  const int ni = static_cast<int>(interior.size());
  std::vector<int> slot(n, -1);
  for (int i = 0; i < ni; ++i) slot[interior[i]] = i;
  mesh.orbit_tag.assign(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    int tag = static_cast<int>(v);
    for (const auto& p : perm) tag = std::min(tag, p[v]);
    mesh.orbit_tag[v] = tag;
  }

  auto symmetrize = [&](std::vector<Vec4>& x) {
    std::vector<Vec4> out = x;
    for (int v : interior) {
      Vec4 s = Vec4::Zero();
      for (std::size_t g = 0; g < group.size(); ++g) s += inv[g].apply(x[perm[g][v]]);
      out[v] = s.normalized();
    }
    x.swap(out);
  };
  auto triangle_areas = [&](const std::vector<Vec4>& x) {
    std::vector<double> a(mesh.triangles.size());
    for (std::size_t f = 0; f < a.size(); ++f) {
      const auto& t = mesh.triangles[f];
      a[f] = triangle_terms(x[t[0]], x[t[1]], x[t[2]], false).area;
    }
    return a;
  };

  LevelStats st;
  st.vertices = n;
  st.triangles = mesh.triangles.size();
  const double hbar = mean_edge_length(mesh);
  const Vec4 u1 = axis.e1(), u2 = axis.e2();
  auto orbit_tangent = [&](const Vec4& x) -> Vec4 { return u2 * u1.dot(x) - u1 * u2.dot(x); };

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  bool analyzed = false;
  // Per-vertex search data: an angle along the orbit (orbit rule) or a
  // tangent vector (gradient rule).
  std::vector<double> angle(n, 0.0);
  std::vector<Vec4> dir(n, Vec4::Zero()), tang(n, Vec4::Zero());
  std::vector<double> mass;

  // The orbit rule first moves along the orbits, then polishes by moving
  // along the vertex normals.
  bool normal_phase = opts.step_rule == StepRule::Normal;
  // Returns the displacement of a full step.
  auto descent = [&]() {
    const std::vector<Vec4> grad = area_gradient(mesh);
    if (ni == 0) return 0.0;
    if (opts.step_rule == StepRule::Gradient) {
      mass = lumped_mass(mesh);
      double dmax = 0;
      for (int v : interior) {
        const Vec4& x = mesh.vertices[v];
        tang[v] = grad[v] - grad[v].dot(x) * x;
        dir[v] = -tang[v] / mass[v];
        dmax = std::max(dmax, dir[v].norm());
      }
      return hbar * hbar * dmax;
    }
    // Newton-like step in the orbit angles (or normal offsets): the area
    // Hessian is approximated by S K S with K the cotangent stiffness and
    // S = nu . dx/dparameter.
    const std::vector<Vec4> nu = vertex_normals(mesh);
    Eigen::VectorXd sv(ni), rhs(ni);
    for (int i = 0; i < ni; ++i) {
      const int v = interior[i];
      const Vec4 kv = normal_phase ? nu[v] : orbit_tangent(mesh.vertices[v]);
      if (normal_phase) dir[v] = nu[v];
      double s = nu[v].dot(kv);
      const double floor = 1e-3 * kv.norm();
      if (std::abs(s) < floor) s = s < 0 ? -floor : floor;
      sv[i] = s;
      rhs[i] = -grad[v].dot(kv) / s;
    }
    const Eigen::SparseMatrix<double> K = cotan_stiffness(mesh, slot, ni);
    if (!analyzed) {
      ldlt.analyzePattern(K);
      analyzed = true;
    }
    ldlt.factorize(K);
    Eigen::VectorXd sol;
    bool ok = ldlt.info() == Eigen::Success && (ldlt.vectorD().array() > 0).all();
    if (ok) {
      sol = ldlt.solve(rhs);
      ok = sol.allFinite();
    }
    if (!ok) {
      const auto lm = lumped_mass(mesh);
      sol.resize(ni);
      for (int i = 0; i < ni; ++i) sol[i] = hbar * hbar * rhs[i] / lm[interior[i]];
    }
    double dmax = 0;
    for (int i = 0; i < ni; ++i) {
      const int v = interior[i];
      angle[v] = sol[i] / sv[i];
      const double speed = normal_phase ? 1.0 : orbit_tangent(mesh.vertices[v]).norm();
      dmax = std::max(dmax, std::abs(angle[v]) * speed);
    }
    return dmax;
  };

  auto advance = [&](double t) {
    std::vector<Vec4> x = mesh.vertices;
    for (int v : interior) {
      if (opts.step_rule == StepRule::Gradient) {
        x[v] = (x[v] + t * dir[v]).normalized();
      } else if (normal_phase) {
        x[v] = (x[v] + t * angle[v] * dir[v]).normalized();
      } else {
        const double a = t * angle[v];
        const Vec4 along = u1 * u1.dot(x[v]) + u2 * u2.dot(x[v]);
        x[v] = (x[v] + (std::cos(a) - 1.0) * along + std::sin(a) * orbit_tangent(x[v])).normalized();
      }
    }
    symmetrize(x);
    return x;
  };

  symmetrize(mesh.vertices);
  std::vector<double> areas = triangle_areas(mesh.vertices);
  double area = pairwise_sum(areas.data(), areas.size());
  double dmax = descent();
  double t = 1.0;
  if (opts.step_rule == StepRule::Gradient && dmax > 0) t = 0.1 * hbar * hbar * hbar / dmax;
  bool mono = true;

  for (st.iterations = 0; st.iterations < opts.max_iterations; ++st.iterations) {
    st.final_step = dmax;
    if (!std::isfinite(area) || !std::isfinite(dmax)) throw Error(ErrorCode::CapExceeded, "non-finite area or gradient");
    if (dmax < opts.grad_tol) {
      if (!normal_phase && opts.step_rule == StepRule::Orbit) {
        normal_phase = true;
        dmax = descent();
        t = 1.0;
        continue;
      }
      st.converged = true;
      break;
    }
    std::vector<Vec4> trial;
    std::vector<double> trial_areas;
    bool accepted = false;
    for (int halving = 0; halving < 50; ++halving) {
      trial = advance(t);
      trial_areas = triangle_areas(trial);
      // Area change summed per triangle, which resolves far smaller changes
      // than a difference of totals.
      std::vector<double> diff(areas.size());
      for (std::size_t f = 0; f < diff.size(); ++f) diff[f] = trial_areas[f] - areas[f];
      if (pairwise_sum(diff.data(), diff.size()) < 0) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (dmax <= opts.stall_tol && opts.step_rule == StepRule::Orbit && !normal_phase) {
        normal_phase = true;
        dmax = descent();
        t = 1.0;
        continue;
      }
      if (dmax <= opts.stall_tol) {
        st.converged = true;
        st.stalled = true;
        break;
      }
      throw Error(ErrorCode::LineSearchFailure, "no area decrease along the descent direction");
    }
    const std::vector<Vec4> old_x = mesh.vertices;
    const std::vector<Vec4> old_tang = tang;
    mesh.vertices.swap(trial);
    areas.swap(trial_areas);
    const double next_area = pairwise_sum(areas.data(), areas.size());
    if (next_area > area * (1.0 + 8.0 * std::numeric_limits<double>::epsilon())) mono = false;
    area = next_area;
    st.max_symmetry_deviation = std::max(st.max_symmetry_deviation, symmetry_deviation(mesh, group, perm));
    dmax = descent();
    if (opts.step_rule == StepRule::Gradient) {
      // Barzilai-Borwein step in the lumped-mass metric.
      double sms = 0, sy = 0;
      for (int v : interior) {
        const Vec4 d = mesh.vertices[v] - old_x[v];
        sms += mass[v] * d.squaredNorm();
        sy += d.dot(tang[v] - old_tang[v]);
      }
      const double tau = hbar * hbar;
      t = std::clamp(sy > 0 ? sms / sy : 2.0 * t, 1e-4 * tau, 1e4 * tau);
    } else {
      t = std::min(1.0, 2.0 * t);
    }
  }
  st.area = area;
  const auto res = mean_curvature_residuals(mesh);
  double sum = 0;
  for (int v : interior) {
    st.max_residual = std::max(st.max_residual, res[v]);
    sum += res[v];
  }
  st.mean_residual = interior.empty() ? 0.0 : sum / static_cast<double>(interior.size());
  if (monotone) *monotone = *monotone && mono;
  return st;
}

DiscSolution solve_disc(const Lattice& lat, const SolverOptions& opts) {
  if (opts.level > 9) throw Error(ErrorCode::InvalidInput, "level above 9");
  if (!(opts.grad_tol > 0) || !(opts.sym_tol > 0)) throw Error(ErrorCode::InvalidInput, "tolerances must be positive");
  const auto group = lat.cell_group(kDiscCell);
  if (opts.level < 2) throw Error(ErrorCode::InvalidInput, "level must be at least 2");
  DiscSolution sol;
  int level = opts.coarse_to_fine ? std::min(opts.coarse_level, opts.level) : opts.level;
  sol.mesh = initial_disc(lat, level);
  bool monotone = true;
  SolverOptions level_opts = opts;
  for (;;) {
    LevelStats st = minimize(sol.mesh, group, lat.axis(kDiscCell), level_opts, &monotone);
    // Refined levels start from the subdivided solution and only need the
    // normal correction.
    if (opts.step_rule == StepRule::Orbit) level_opts.step_rule = StepRule::Normal;
    st.level = level;
    sol.report.levels.push_back(st);
    if (level == opts.level) break;
    sol.coarser.push_back(sol.mesh);
    sol.mesh = subdivide(sol.mesh);
    ++level;
  }
  auto& r = sol.report;
  const auto& last = r.levels.back();
  r.area = last.area;
  r.max_residual = last.max_residual;
  r.mean_residual = last.mean_residual;
  r.converged = last.converged;
  r.monotone = monotone;
  r.boundary_deviation = boundary_deviation(sol.mesh, lat);
  r.symmetry_deviation = symmetry_deviation(sol.mesh, group, symmetry_permutations(sol.mesh, group));
  r.containment_violation = containment_violation(sol.mesh, lat);
  if (!last.converged) r.warnings.push_back("iteration limit reached before convergence");
  if (last.stalled) r.warnings.push_back("line search stalled at round-off level");
  if (r.containment_violation > 1e-6) {
    std::ostringstream os;
    os << "disc leaves its cell by " << r.containment_violation;
    r.warnings.push_back(os.str());
  }
  if (r.symmetry_deviation > opts.sym_tol) r.warnings.push_back("symmetry deviation above tolerance");
  try {
    const Curves c = extract_curves(sol.mesh, lat);
    r.axis_point = c.x;
    r.alpha = c.alpha;
    r.beta = c.beta;
  } catch (const Error& e) {
    r.warnings.push_back(std::string("curve extraction failed: ") + e.what());
  }
  return sol;
}

bool GraphicalReport::pass() const {
  return overlaps == 0 && orientation_flips == 0 && max_angle_defect < 1e-6 && std::abs(winding) == 1 &&
         orbits_bad == 0 && min_transversality >= tangency_tol;
}

namespace {

using P2 = Eigen::Vector2d;

double orient2(const P2& a, const P2& b, const P2& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

// Separating-axis test for open triangles with a small margin.
bool triangles_overlap(const std::array<P2, 3>& s, const std::array<P2, 3>& t, double eps) {
  for (int pass = 0; pass < 2; ++pass) {
    const auto& a = pass == 0 ? s : t;
    const auto& b = pass == 0 ? t : s;
    const double sign = orient2(a[0], a[1], a[2]) > 0 ? 1.0 : -1.0;
    for (int e = 0; e < 3; ++e) {
      const P2& p = a[e];
      const P2& q = a[(e + 1) % 3];
      bool all_out = true;
      for (const auto& x : b) all_out = all_out && sign * orient2(p, q, x) <= eps;
      if (all_out) return false;
    }
  }
  return true;
}

}  // namespace

GraphicalReport verify_graphical(const TriMeshS3& mesh, const Lattice& lat, std::size_t n_orbits, Rng& rng,
                                 double tangency_tol) {
  GraphicalReport r;
  const GreatCircle axis = lat.axis(kDiscCell);
  const GreatCircle perp = axis.orthocomplement();
  const PointS3 pole = lat.t_lower(0);
  std::vector<P2> q(mesh.vertices.size());
  for (std::size_t v = 0; v < q.size(); ++v) {
    const Vec4 b = orbit_project(axis, pole, PointS3{mesh.vertices[v]}).vec();
    q[v] = P2(b.dot(perp.e1()), b.dot(perp.e2()));
  }
  // Orientation of projected triangles.
  std::vector<double> sa(mesh.triangles.size());
  int pos = 0, neg = 0;
  for (std::size_t f = 0; f < sa.size(); ++f) {
    const auto& t = mesh.triangles[f];
    sa[f] = orient2(q[t[0]], q[t[1]], q[t[2]]);
    (sa[f] > 0 ? pos : neg) += 1;
  }
  const double major = pos >= neg ? 1.0 : -1.0;
  for (std::size_t f = 0; f < sa.size(); ++f) {
    if (!(major * sa[f] > 0)) {
      if (r.orientation_flips == 0) r.witness = "flipped projected triangle " + std::to_string(f);
      ++r.orientation_flips;
    }
  }
  // Angle sums at interior vertices.
  std::vector<double> angle(mesh.vertices.size(), 0.0);
  for (const auto& t : mesh.triangles) {
    for (int s = 0; s < 3; ++s) {
      const P2 e1 = q[t[(s + 1) % 3]] - q[t[s]];
      const P2 e2 = q[t[(s + 2) % 3]] - q[t[s]];
      angle[t[s]] += std::atan2(std::abs(e1.x() * e2.y() - e1.y() * e2.x()), e1.dot(e2));
    }
  }
  for (std::size_t v = 0; v < angle.size(); ++v) {
    if (!mesh.boundary[v]) r.max_angle_defect = std::max(r.max_angle_defect, std::abs(angle[v] - 2 * kPi));
  }
  // Pairwise overlaps of non-adjacent projected triangles through a grid.
  {
    double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
    for (const auto& p : q) {
      lo_x = std::min(lo_x, p.x());
      lo_y = std::min(lo_y, p.y());
      hi_x = std::max(hi_x, p.x());
      hi_y = std::max(hi_y, p.y());
    }
    const int g = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(mesh.triangles.size()))));
    const double cw = std::max(hi_x - lo_x, 1e-12) / g, ch = std::max(hi_y - lo_y, 1e-12) / g;
    std::vector<std::vector<int>> cells(static_cast<std::size_t>(g) * g);
    auto cell_range = [&](const Tri& t, int& x0, int& x1, int& y0, int& y1) {
      double a = 1e300, b = -1e300, c = 1e300, d = -1e300;
      for (int v : t) {
        a = std::min(a, q[v].x());
        b = std::max(b, q[v].x());
        c = std::min(c, q[v].y());
        d = std::max(d, q[v].y());
      }
      x0 = std::clamp(static_cast<int>((a - lo_x) / cw), 0, g - 1);
      x1 = std::clamp(static_cast<int>((b - lo_x) / cw), 0, g - 1);
      y0 = std::clamp(static_cast<int>((c - lo_y) / ch), 0, g - 1);
      y1 = std::clamp(static_cast<int>((d - lo_y) / ch), 0, g - 1);
    };
    for (std::size_t f = 0; f < mesh.triangles.size(); ++f) {
      int x0, x1, y0, y1;
      cell_range(mesh.triangles[f], x0, x1, y0, y1);
      for (int i = x0; i <= x1; ++i) {
        for (int j = y0; j <= y1; ++j) cells[static_cast<std::size_t>(i) * g + j].push_back(static_cast<int>(f));
      }
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& cell : cells) {
      for (std::size_t i = 0; i < cell.size(); ++i) {
        for (std::size_t j = i + 1; j < cell.size(); ++j) {
          const Tri& s = mesh.triangles[cell[i]];
          const Tri& t = mesh.triangles[cell[j]];
          bool share = false;
          for (int a : s) {
            for (int b : t) share = share || a == b;
          }
          if (share) continue;
          const std::pair<int, int> key{cell[i], cell[j]};
          if (!seen.insert(key).second) continue;
          if (triangles_overlap({q[s[0]], q[s[1]], q[s[2]]}, {q[t[0]], q[t[1]], q[t[2]]}, 1e-15)) {
            if (r.overlaps == 0 && r.witness.empty()) {
              r.witness = "projected triangles " + std::to_string(cell[i]) + " and " + std::to_string(cell[j]) + " overlap";
            }
            ++r.overlaps;
          }
        }
      }
    }
  }
  // Winding of the projected boundary around the pole.
  {
    const auto loops = boundary_loops(mesh);
    double total = 0;
    if (loops.size() == 1) {
      const auto& l = loops[0];
      for (std::size_t i = 0; i < l.size(); ++i) {
        const P2& a = q[l[i]];
        const P2& b = q[l[(i + 1) % l.size()]];
        total += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
      }
    }
    r.winding = static_cast<int>(std::lround(total / (2 * kPi)));
  }
  // Transversality of the orbits to the triangles.
  {
    const auto parts = lat.boundary_parts(kDiscCell);
    r.min_transversality = 1.0;
    r.min_transversality_corner = 1.0;
    for (const auto& t : mesh.triangles) {
      const Vec4& a = mesh.vertices[t[0]];
      const Vec4& b = mesh.vertices[t[1]];
      const Vec4& c = mesh.vertices[t[2]];
      const Vec4 p = (a + b + c).normalized();
      const Vec4 kv = killing_eval(perp, PointS3{p}).dir;
      const double tr = std::abs(face_normal(a, b, c).dot(kv.normalized()));
      const double local = std::max({(a - b).norm(), (b - c).norm(), (c - a).norm()});
      bool near_corner = false;
      for (const auto& corner : parts.corners) near_corner = near_corner || (p - corner.vec()).norm() < 2 * local;
      double& slot = near_corner ? r.min_transversality_corner : r.min_transversality;
      slot = std::min(slot, tr);
    }
    r.tangency_tol = tangency_tol;
    if (r.min_transversality < tangency_tol && r.witness.empty()) r.witness = "orbit tangent to the disc";
  }
  // Sampled orbits through interior points of the cell.
  {
    const SphericalTetrahedron cell = lat.tetra(kDiscCell);
    const std::size_t nt = mesh.triangles.size();
    std::vector<Vec4> normals(nt);
    std::vector<Mat4> solve(nt);
    for (std::size_t f = 0; f < nt; ++f) {
      const auto& t = mesh.triangles[f];
      normals[f] = face_normal(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
      Mat4 m;
      m << mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]], normals[f];
      solve[f] = m.inverse();
    }
    const Vec4 e1 = axis.e1(), e2 = axis.e2();
    for (std::size_t o = 0; o < n_orbits; ++o) {
      Vec4 w;
      double total = 0;
      for (int i = 0; i < 4; ++i) {
        w[i] = -std::log(1.0 - rng.uniform());
        total += w[i];
      }
      Vec4 y = Vec4::Zero();
      for (int i = 0; i < 4; ++i) y += (w[i] / total) * cell.vertex(i).vec();
      y.normalize();
      const Vec4 a = axis.projector() * y;
      const Vec4 base = y - a;
      const double rad = a.norm();
      std::vector<Vec4> hits;
      for (std::size_t f = 0; f < nt; ++f) {
        const Vec4& nf = normals[f];
        const double A = nf.dot(base), B = rad * nf.dot(e1), C = rad * nf.dot(e2);
        const double R = std::hypot(B, C);
        if (R < std::abs(A) || R == 0) continue;
        const double phi = std::atan2(C, B);
        const double delta = std::acos(std::clamp(-A / R, -1.0, 1.0));
        for (double th : {phi + delta, phi - delta}) {
          const Vec4 p = base + rad * (std::cos(th) * e1 + std::sin(th) * e2);
          const Vec4 co = solve[f] * p;
          if (co[0] >= -1e-12 && co[1] >= -1e-12 && co[2] >= -1e-12) {
            bool dup = false;
            for (const auto& h : hits) dup = dup || (h - p).norm() < 1e-8;
            if (!dup) hits.push_back(p);
          }
          if (delta == 0) break;
        }
      }
      ++r.orbits;
      if (hits.size() != 1) {
        if (r.orbits_bad == 0 && r.witness.empty()) {
          r.witness = "orbit " + std::to_string(o) + " meets the disc " + std::to_string(hits.size()) + " times";
        }
        ++r.orbits_bad;
      }
    }
  }
  return r;
}

bool Curves::pass() const {
  bool ok = x_offset < 1e-6 && !alpha.empty() && !beta.empty();
  for (const auto& q : quadrants) ok = ok && q.pass;
  return ok;
}

namespace {

// Polyline of mesh points with n.x = 0, ordered from the end nearest start.
std::vector<Vec4> plane_section(const TriMeshS3& mesh, const Vec4& n, const Vec4& start, double tol) {
  const long long nv = static_cast<long long>(mesh.vertices.size());
  std::vector<double> s(mesh.vertices.size());
  std::vector<int> sg(mesh.vertices.size());
  for (std::size_t v = 0; v < s.size(); ++v) {
    s[v] = n.dot(mesh.vertices[v]);
    sg[v] = std::abs(s[v]) <= tol ? 0 : (s[v] > 0 ? 1 : -1);
  }
  auto vkey = [](int v) { return static_cast<long long>(v); };
  auto ekey = [&](int a, int b) {
    const Edge e = make_edge(a, b);
    return nv + static_cast<long long>(e.a) * nv + e.b;
  };
  std::map<long long, Vec4> pos;
  auto node_vertex = [&](int v) {
    pos[vkey(v)] = mesh.vertices[v];
    return vkey(v);
  };
  auto node_edge = [&](int a, int b) {
    const Vec4 p = (s[a] * mesh.vertices[b] - s[b] * mesh.vertices[a]) / (s[a] - s[b]);
    const long long k = ekey(a, b);
    if (!pos.count(k)) pos[k] = p.normalized();
    return k;
  };
  std::set<std::pair<long long, long long>> segs;
  auto add = [&](long long a, long long b) {
    if (a != b) segs.insert({std::min(a, b), std::max(a, b)});
  };
  for (const auto& t : mesh.triangles) {
    int zeros = 0;
    for (int v : t) zeros += sg[v] == 0;
    if (zeros == 3) throw Error(ErrorCode::Topology, "triangle lies in the cutting sphere");
    if (zeros == 2) {
      std::vector<int> z;
      for (int v : t) {
        if (sg[v] == 0) z.push_back(v);
      }
      add(node_vertex(z[0]), node_vertex(z[1]));
    } else if (zeros == 1) {
      int o = 0;
      while (sg[t[o]] != 0) ++o;
      const int p = t[(o + 1) % 3], q = t[(o + 2) % 3];
      if (sg[p] * sg[q] < 0) add(node_vertex(t[o]), node_edge(p, q));
    } else {
      std::vector<long long> c;
      for (int e = 0; e < 3; ++e) {
        const int a = t[e], b = t[(e + 1) % 3];
        if (sg[a] * sg[b] < 0) c.push_back(node_edge(a, b));
      }
      if (c.size() == 2) add(c[0], c[1]);
    }
  }
  std::map<long long, std::vector<long long>> adj;
  for (const auto& [a, b] : segs) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<long long> ends;
  for (const auto& [k, nb] : adj) {
    if (nb.size() == 1) ends.push_back(k);
    else if (nb.size() != 2) throw Error(ErrorCode::Topology, "section branches");
  }
  if (ends.size() != 2) throw Error(ErrorCode::Topology, "section is not a single arc");
  long long cur = (pos[ends[0]] - start).norm() <= (pos[ends[1]] - start).norm() ? ends[0] : ends[1];
  long long prev = -1;
  std::vector<Vec4> out;
  for (;;) {
    out.push_back(pos[cur]);
    long long next = -1;
    for (long long nb : adj[cur]) {
      if (nb != prev) next = nb;
    }
    if (next < 0) break;
    prev = cur;
    cur = next;
  }
  if (out.size() != adj.size()) throw Error(ErrorCode::Topology, "section is disconnected");
  return out;
}

}  // namespace

Curves extract_curves(const TriMeshS3& mesh, const Lattice& lat) {
  Curves c;
  const Vec4 n2 = Vec4::Unit(1), n4 = Vec4::Unit(3);
  c.alpha = plane_section(mesh, n2, lat.t_upper(-1).vec(), 1e-12);
  c.beta = plane_section(mesh, n4, lat.t_lower(-1).vec(), 1e-12);
  // Crossing of alpha with x4 = 0.
  bool found = false;
  for (std::size_t i = 0; i + 1 < c.alpha.size() && !found; ++i) {
    const Vec4& a = c.alpha[i];
    const Vec4& b = c.alpha[i + 1];
    if (std::abs(a[3]) <= 1e-12) {
      c.x = a;
      found = true;
    } else if (a[3] * b[3] < 0) {
      c.x = ((a[3] * b - b[3] * a) / (a[3] - b[3])).normalized();
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::Topology, "alpha does not cross x4 = 0");
  const double off_plane = std::hypot(c.x[1], c.x[3]);
  c.x_offset = std::asin(std::min(1.0, off_plane));
  if (c.x[0] < -1e-12 || c.x[2] < -1e-12) c.x_offset = std::max(c.x_offset, 1.0);
  c.x_symmetric_gap = std::abs(c.x[0] - c.x[2]);

  for (int s2 : {-1, 1}) {
    for (int s4 : {-1, 1}) {
      CheckResult q;
      const std::string name = std::string("quadrant x2") + (s2 > 0 ? "+" : "-") + " x4" + (s4 > 0 ? "+" : "-");
      const std::array<Vec4, 2> hs{Vec4(s2 * n2), Vec4(s4 * n4)};
      const TriMeshS3 piece = clip(mesh, hs, 1e-12);
      const auto loops = boundary_loops(piece);
      if (connected_components(piece) != 1 || loops.size() != 1 || euler_characteristic(piece) != 1) {
        q.fail(name + " is not a disc");
        c.quadrants.push_back(q);
        continue;
      }
      const Vec4 tl = lat.t_lower(s2).vec();
      const Vec4 tu = lat.t_upper(s4).vec();
      bool has_tl = false, has_tu = false, has_x = false;
      for (int v : loops[0]) {
        const Vec4& p = piece.vertices[v];
        has_tl = has_tl || (p - tl).norm() < 1e-9;
        has_tu = has_tu || (p - tu).norm() < 1e-9;
        has_x = has_x || (p - c.x).norm() < 1e-9;
        const double d = std::min({distance_to_arc(tl, tu, p), std::abs(p[1]), std::abs(p[3])});
        q.track(d, 1e-9, name + " boundary leaves the expected arcs");
      }
      if (!has_tl || !has_tu || !has_x) q.fail(name + " boundary misses a corner");
      c.quadrants.push_back(q);
    }
  }
  return c;
}

}  // namespace lawson
