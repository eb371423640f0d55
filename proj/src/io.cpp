#include "lawson/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace lawson {

namespace {

Json vec_json(const Vec4& v) { return Json::array({v[0], v[1], v[2], v[3]}); }

Json cell_json(const CellIndex& c) {
  return Json{{"family", std::string(to_string(c.family))}, {"i2", c.i2}, {"j2", c.j2}};
}

std::string format_g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Stereographic::Stereographic(const Vec4& pole) : pole_(pole.normalized()) {
  int found = 0;
  for (int i = 0; i < 4 && found < 3; ++i) {
    Vec4 e = Vec4::Unit(i);
    e -= e.dot(pole_) * pole_;
    for (int j = 0; j < found; ++j) e -= e.dot(basis_[j]) * basis_[j];
    if (e.norm() > 1e-6) basis_[found++] = e.normalized();
  }
}

Eigen::Vector3d Stereographic::apply(const Vec4& x) const {
  const double s = 1.0 - x.dot(pole_);
  return Eigen::Vector3d(x.dot(basis_[0]), x.dot(basis_[1]), x.dot(basis_[2])) / s;
}

Vec4 default_export_pole(const Lattice& lat) { return -lat.t_upper(2 * (lat.k() / 2)).vec(); }

double pole_clearance(const TriMeshS3& mesh, const Vec4& pole) {
  double best = 2.0;
  for (const auto& v : mesh.vertices) best = std::min(best, (v - pole).norm());
  return best;
}

void write_obj(std::ostream& os, const TriMeshS3& mesh, const Stereographic& proj, bool comment_4d) {
  for (const auto& v : mesh.vertices) {
    if (comment_4d) {
      os << "# x4 " << format_g(v[0]) << ' ' << format_g(v[1]) << ' ' << format_g(v[2]) << ' ' << format_g(v[3])
         << '\n';
    }
    const Eigen::Vector3d y = proj.apply(v);
    os << "v " << format_g(y[0]) << ' ' << format_g(y[1]) << ' ' << format_g(y[2]) << '\n';
  }
  for (const auto& t : mesh.triangles) os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

Json mesh_json(const TriMeshS3& mesh) {
  Json verts = Json::array(), tris = Json::array();
  for (const auto& v : mesh.vertices) verts.push_back(vec_json(v));
  for (const auto& t : mesh.triangles) tris.push_back(Json::array({t[0], t[1], t[2]}));
  Json boundary = Json::array();
  for (auto b : mesh.boundary) boundary.push_back(static_cast<int>(b));
  return Json{{"vertices", verts}, {"triangles", tris}, {"boundary", boundary}, {"orbit_tag", mesh.orbit_tag}};
}

TriMeshS3 mesh_from_json(const Json& j) {
  TriMeshS3 m;
  try {
    for (const auto& v : j.at("vertices")) {
      if (v.size() != 4) throw Error(ErrorCode::InvalidMesh, "vertex without four coordinates");
      m.vertices.emplace_back(v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>());
    }
    const int n = static_cast<int>(m.vertices.size());
    for (const auto& t : j.at("triangles")) {
      if (t.size() != 3) throw Error(ErrorCode::InvalidMesh, "triangle without three indices");
      Tri tri{t[0].get<int>(), t[1].get<int>(), t[2].get<int>()};
      for (int v : tri) {
        if (v < 0 || v >= n) throw Error(ErrorCode::InvalidMesh, "triangle index out of range");
      }
      m.triangles.push_back(tri);
    }
    if (j.contains("boundary")) {
      for (const auto& b : j.at("boundary")) m.boundary.push_back(static_cast<std::uint8_t>(b.get<int>()));
    }
    if (j.contains("orbit_tag")) m.orbit_tag = j.at("orbit_tag").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidMesh, std::string("malformed mesh json: ") + e.what());
  }
  m.boundary.resize(m.vertices.size(), 0);
  m.orbit_tag.resize(m.vertices.size(), -1);
  return m;
}

Json disc_report_json(const DiscReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    levels.push_back(Json{{"level", l.level},
                          {"vertices", l.vertices},
                          {"triangles", l.triangles},
                          {"iterations", l.iterations},
                          {"area", l.area},
                          {"max_residual", l.max_residual},
                          {"mean_residual", l.mean_residual},
                          {"final_step", l.final_step},
                          {"max_symmetry_deviation", l.max_symmetry_deviation},
                          {"converged", l.converged},
                          {"stalled", l.stalled}});
  }
  Json alpha = Json::array(), beta = Json::array();
  for (const auto& p : r.alpha) alpha.push_back(vec_json(p));
  for (const auto& p : r.beta) beta.push_back(vec_json(p));
  return Json{{"levels", levels},
              {"area", r.area},
              {"max_residual", r.max_residual},
              {"mean_residual", r.mean_residual},
              {"boundary_deviation", r.boundary_deviation},
              {"symmetry_deviation", r.symmetry_deviation},
              {"containment_violation", r.containment_violation},
              {"converged", r.converged},
              {"monotone", r.monotone},
              {"axis_point", vec_json(r.axis_point)},
              {"alpha", alpha},
              {"beta", beta},
              {"warnings", r.warnings}};
}

Json lattice_json(const Lattice& lat) {
  Json fams = Json::object();
  for (Family f : {Family::Omega, Family::OmegaHalf, Family::OmegaEven, Family::OmegaOdd}) {
    Json cells = Json::array();
    for (const auto& c : lat.cells(f)) {
      const SphericalTetrahedron t = lat.tetra(c);
      Json verts = Json::array(), lengths = Json::array(), angles = Json::array();
      for (const auto& v : t.vertices()) verts.push_back(vec_json(v.vec()));
      for (int e = 0; e < 6; ++e) {
        lengths.push_back(t.edge_length(e));
        angles.push_back(t.dihedral_angle(e));
      }
      cells.push_back(Json{{"i2", c.i2},
                           {"j2", c.j2},
                           {"vertices", verts},
                           {"edge_lengths", lengths},
                           {"dihedral_angles", angles}});
    }
    fams[std::string(to_string(f))] = cells;
  }
  return Json{{"m", lat.m()}, {"k", lat.k()}, {"cells", fams}};
}

Json group_json(const FiniteGroup& g) {
  Json elems = Json::array();
  for (const auto& e : g.elements()) {
    Json row = Json::array();
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) row.push_back(e.matrix()(i, j));
    }
    elems.push_back(row);
  }
  Json table = Json::array();
  for (std::size_t a = 0; a < g.order(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < g.order(); ++b) row.push_back(g.product(a, b));
    table.push_back(row);
  }
  return Json{{"order", g.order()}, {"elements", elems}, {"table", table}};
}

Json topology_json(const Topology& t) {
  return Json{{"vertices", t.vertices}, {"edges", t.edges},     {"faces", t.faces},
              {"chi", t.chi},           {"genus", t.genus},     {"boundary_loops", t.boundary_loops},
              {"orientable", t.orientable}, {"connected", t.connected}};
}

Json ledger_json(const LedgerReport& r) {
  Json cells = Json::array();
  for (const auto& c : r.cells) {
    Json crossings = Json::array();
    for (const auto& x : c.crossings) {
      crossings.push_back(
          Json{{"point", vec_json(x.point)}, {"edge", x.edge}, {"theta", x.theta}, {"corner_angle", x.corner_angle}});
    }
    cells.push_back(Json{{"cell", cell_json(c.cell)},
                         {"chi", c.chi},
                         {"b_tilde", c.b_tilde},
                         {"g_tilde", c.g_tilde},
                         {"edge_counts", c.edge_counts},
                         {"crossings", crossings},
                         {"expected", c.expected},
                         {"residual", c.residual},
                         {"measured_residual", c.measured_residual},
                         {"classification", c.classification}});
  }
  return Json{{"cells", cells},
              {"max_residual", r.max_residual},
              {"max_measured_residual", r.max_measured_residual},
              {"all_quadrilateral", r.all_quadrilateral}};
}

Json umbilic_json(const UmbilicReport& r) {
  Json cands = Json::array(), controls = Json::array();
  for (std::size_t i = 0; i < r.candidate_names.size(); ++i) {
    cands.push_back(Json{{"point", r.candidate_names[i]}, {"statistic", r.candidate_stat[i]}});
  }
  for (std::size_t i = 0; i < r.control_names.size(); ++i) {
    controls.push_back(Json{{"point", r.control_names[i]}, {"statistic", r.control_stat[i]}});
  }
  return Json{{"candidates", cands},
              {"controls", controls},
              {"samples", r.sample_stat.size()},
              {"percentile5", r.percentile5},
              {"expected_count", r.expected_count},
              {"total_degree_target", r.total_degree_target},
              {"pass", r.pass},
              {"witness", r.witness}};
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  os << contents;
  if (!os) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace lawson
