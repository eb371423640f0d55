#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lawson/lattice.hpp"
#include "lawson/s3core.hpp"

namespace lawson {

class FiniteGroup {
 public:
  static constexpr double kDedupTol = 1e-8;

  // Closure of the generators. Elements are ordered breadth-first from the
  // identity, lexicographically within each layer.
  static FiniteGroup close(std::span<const Isometry4> generators, std::size_t cap);
  static FiniteGroup close(const std::vector<Isometry4>& generators, std::size_t cap) {
    return close(std::span<const Isometry4>(generators), cap);
  }

  std::size_t order() const { return elements_.size(); }
  const std::vector<Isometry4>& elements() const { return elements_; }
  const Isometry4& element(std::size_t i) const { return elements_[i]; }
  const std::vector<Isometry4>& generators() const { return generators_; }
  std::size_t product(std::size_t a, std::size_t b) const { return table_[a * order() + b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  std::size_t identity_index() const { return 0; }
  std::optional<std::size_t> find(const Isometry4& g) const;
  bool contains(const Isometry4& g) const { return find(g).has_value(); }

  // Subgroup from element indices; throws InvalidInput when not closed.
  FiniteGroup subgroup(const std::vector<std::size_t>& indices) const;
  bool is_subgroup_of(const FiniteGroup& other) const;
  bool same_elements(const FiniteGroup& other) const;
  // Elements of *this that also lie in other.
  std::vector<std::size_t> intersection_indices(const FiniteGroup& other) const;

 private:
  void build_index();
  void build_table();
  std::vector<Isometry4> elements_;
  std::vector<Isometry4> generators_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
  std::unordered_multimap<long long, std::size_t> index_;
};

std::size_t default_cap(const Lattice& lat);

struct NamedGroups {
  FiniteGroup spheres;     // reflections in the k+m spheres
  FiniteGroup quad;        // reflections in the quadrilateral circles
  FiniteGroup axes;        // reflections in the axis circles
  FiniteGroup circles;     // all of the above circles
  FiniteGroup mplus;       // orientation-preserving symmetries of the surface
  FiniteGroup full;        // closure of spheres and circles
};

NamedGroups build_named_groups(const Lattice& lat);

// Map exchanging C and C-perp; only meaningful when m == k.
Isometry4 exchange_element();

struct GroupCertificate {
  std::vector<std::pair<std::string, bool>> items;
  std::vector<std::pair<std::string, std::size_t>> orders;
  bool pass() const;
};

GroupCertificate certify_named_groups(const NamedGroups& g, const Lattice& lat);

struct GroupAction {
  Family family = Family::Omega;
  std::vector<CellIndex> cells;
  std::vector<std::vector<std::size_t>> perm;  // perm[g][cell]
  bool transitive = false;
  bool simply_transitive = false;
  std::vector<std::size_t> stabilizer_orders;
  bool homomorphism = false;
};

// Throws NotAnAction if an element maps a cell off the family.
GroupAction act(const FiniteGroup& group, const Lattice& lat, Family family);

FiniteGroup stabilizer(const FiniteGroup& group, std::span<const Vec4> points, double tol = 1e-9);
FiniteGroup stabilizer(const FiniteGroup& group, const Lattice& lat, const CellIndex& cell, double tol = 1e-9);

// All orthogonal maps permuting the vertices of t.
std::vector<Isometry4> tetra_symmetries(const SphericalTetrahedron& t, double tol = 1e-9);

// Every sphere-group orbit meets each half-integer cell exactly once.
CheckResult hemisphere_orbit_check(const Lattice& lat, const FiniteGroup& spheres, std::size_t n, Rng& rng);

// Random associativity triples checked against the matrices.
CheckResult table_check(const FiniteGroup& g, std::size_t triples, Rng& rng);

}  // namespace lawson
