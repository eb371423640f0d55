#pragma once

#include <array>
#include <filesystem>
#include <ostream>
#include <string>

#include <Eigen/Core>
#include <json.hpp>

#include "lawson/groups.hpp"
#include "lawson/lattice.hpp"
#include "lawson/mesh.hpp"
#include "lawson/plateau.hpp"
#include "lawson/surface.hpp"

namespace lawson {

using Json = nlohmann::ordered_json;

// Stereographic projection from a unit pole onto the orthogonal R^3, in a
// fixed orthonormal basis of the pole's complement.
class Stereographic {
 public:
  explicit Stereographic(const Vec4& pole);
  const Vec4& pole() const { return pole_; }
  Eigen::Vector3d apply(const Vec4& x) const;

 private:
  Vec4 pole_;
  std::array<Vec4, 3> basis_;
};

// -t^j for the integer j = floor(k/2); off every Lawson surface of the lattice.
Vec4 default_export_pole(const Lattice& lat);
// Smallest distance from the pole to a mesh vertex.
double pole_clearance(const TriMeshS3& mesh, const Vec4& pole);

// `v x y z` per projected vertex and 1-indexed `f` lines. With comment_4d
// each vertex is preceded by `# x4 x1 x2 x3 x4` holding the exact point.
void write_obj(std::ostream& os, const TriMeshS3& mesh, const Stereographic& proj, bool comment_4d);

Json mesh_json(const TriMeshS3& mesh);
// Throws InvalidMesh on malformed input.
TriMeshS3 mesh_from_json(const Json& j);

Json disc_report_json(const DiscReport& r);
Json lattice_json(const Lattice& lat);
Json group_json(const FiniteGroup& g);
Json topology_json(const Topology& t);
Json ledger_json(const LedgerReport& r);
Json umbilic_json(const UmbilicReport& r);

// Throws Io on failure.
void write_file(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace lawson
