#include <doctest.h>

#include <sstream>

#include "lawson/io.hpp"

using namespace lawson;

TEST_CASE("stereographic projection sends the antipode of the pole to the origin") {
  const Vec4 pole = Vec4(0, 0, -1, 0);
  const Stereographic s(pole);
  CHECK(s.apply(-pole).norm() < 1e-15);
  // points orthogonal to the pole land on the unit sphere
  CHECK(s.apply(Vec4(1, 0, 0, 0)).norm() == doctest::Approx(1.0));
  CHECK(s.apply(Vec4(0, 0, 0, 1)).norm() == doctest::Approx(1.0));
}

TEST_CASE("default export pole is on C-perp at an integer point") {
  for (int k : {2, 3, 4}) {
    const Lattice lat({3, k});
    const Vec4 p = default_export_pole(lat);
    CHECK(p.head<2>().norm() < 1e-15);
    CHECK(p.norm() == doctest::Approx(1.0));
    bool at_integer = false;
    for (int j2 = 0; j2 < 4 * k; j2 += 2) at_integer = at_integer || (lat.t_upper(j2).vec() - p).norm() < 1e-12;
    CHECK(at_integer);
  }
}

TEST_CASE("obj output") {
  TriMeshS3 m = round_sphere_mesh(0);
  std::ostringstream os;
  write_obj(os, m, Stereographic(Vec4(0, 0, 0, -1)), true);
  std::istringstream is(os.str());
  std::string line;
  int v = 0, f = 0, c = 0, min_index = 100;
  while (std::getline(is, line)) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("# x4 ", 0) == 0) ++c;
    if (line.rfind("f ", 0) == 0) {
      ++f;
      std::istringstream ls(line.substr(2));
      int a, b, d;
      ls >> a >> b >> d;
      min_index = std::min({min_index, a, b, d});
    }
  }
  CHECK(v == 6);
  CHECK(c == 6);
  CHECK(f == 8);
  CHECK(min_index == 1);
}

TEST_CASE("mesh json round trip") {
  TriMeshS3 m = round_sphere_mesh(1);
  m.boundary[3] = 1;
  m.orbit_tag[2] = 7;
  const TriMeshS3 r = mesh_from_json(Json::parse(mesh_json(m).dump()));
  REQUIRE(r.num_vertices() == m.num_vertices());
  for (std::size_t i = 0; i < m.num_vertices(); ++i) CHECK(r.vertices[i] == m.vertices[i]);
  CHECK(r.triangles == m.triangles);
  CHECK(r.boundary[3] == 1);
  CHECK(r.orbit_tag[2] == 7);
}

TEST_CASE("malformed mesh json is rejected") {
  CHECK_THROWS_AS(mesh_from_json(Json::parse(R"({"vertices": [[1,0,0]], "triangles": []})")), Error);
  CHECK_THROWS_AS(mesh_from_json(Json::parse(R"({"vertices": [[1,0,0,0]], "triangles": [[0,1,2]]})")), Error);
  CHECK_THROWS_AS(mesh_from_json(Json::parse(R"({"triangles": []})")), Error);
}

TEST_CASE("group json carries the multiplication table") {
  const NamedGroups g = build_named_groups(Lattice({3, 2}));
  const Json j = group_json(g.quad);
  CHECK(j["order"] == 12);
  CHECK(j["elements"].size() == 12);
  CHECK(j["elements"][0].size() == 16);
  CHECK(j["table"][0][5] == 5);
}

TEST_CASE("lattice json lists every family") {
  const Json j = lattice_json(Lattice({3, 2}));
  CHECK(j["cells"]["omega"].size() == 24);
  CHECK(j["cells"]["omega"][0]["edge_lengths"].size() == 6);
}

TEST_CASE("file helpers report io errors") {
  CHECK_THROWS_AS(read_file("/nonexistent/lawson/file"), Error);
  CHECK_THROWS_AS(write_file("/proc/lawson-cannot-write/x", "x"), Error);
}
