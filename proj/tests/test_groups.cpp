#include <doctest.h>

#include "lawson/groups.hpp"

using namespace lawson;

TEST_CASE("closure of a single reflection") {
  const Isometry4 r = reflection(GreatSphere(Vec4(0, 1, 0, 0)));
  const FiniteGroup g = FiniteGroup::close(std::vector<Isometry4>{r}, 10);
  CHECK(g.order() == 2);
  CHECK(g.product(1, 1) == g.identity_index());
  CHECK(g.inverse(1) == 1);
}

TEST_CASE("closure stops at the cap") {
  const Isometry4 r = rotate_about(circle_C(), 0.1);  // infinite order
  CHECK_THROWS_AS(FiniteGroup::close(std::vector<Isometry4>{r}, 50), Error);
}

TEST_CASE("named group orders") {
  for (auto [m, k] : {std::pair{3, 2}, {4, 2}, {3, 3}, {4, 3}}) {
    const Lattice lat({m, k});
    const NamedGroups g = build_named_groups(lat);
    const std::size_t km = static_cast<std::size_t>(m * k);
    CHECK(g.full.order() == 8 * km);
    CHECK(g.spheres.order() == 4 * km);
    CHECK(g.circles.order() == 4 * km);
    CHECK(g.mplus.order() == 4 * km);
    CHECK(g.quad.order() == 2 * km);
    CHECK(g.axes.order() == 2 * km);
    const GroupCertificate cert = certify_named_groups(g, lat);
    for (const auto& [item, ok] : cert.items) {
      INFO(item);
      CHECK(ok);
    }
  }
}

TEST_CASE("M[3,2] full group has 48 elements") {
  const NamedGroups g = build_named_groups(Lattice({3, 2}));
  CHECK(g.full.order() == 48);
}

TEST_CASE("exchange element doubles the full group when m == k") {
  const Lattice lat({3, 3});
  const NamedGroups g = build_named_groups(lat);
  std::vector<Isometry4> gens = g.full.elements();
  gens.push_back(exchange_element());
  CHECK(FiniteGroup::close(gens, 2 * default_cap(lat)).order() == 16 * 9);
}

TEST_CASE("group actions on the cell families") {
  for (auto [m, k] : {std::pair{3, 2}, {4, 3}}) {
    const Lattice lat({m, k});
    const NamedGroups g = build_named_groups(lat);
    const GroupAction s = act(g.spheres, lat, Family::OmegaHalf);
    CHECK(s.simply_transitive);
    CHECK(s.homomorphism);
    const GroupAction q = act(g.quad, lat, Family::OmegaEven);
    CHECK(q.simply_transitive);
    const GroupAction f = act(g.full, lat, Family::OmegaEven);
    CHECK(f.transitive);
    for (auto o : f.stabilizer_orders) CHECK(o == 4);
    const GroupAction fh = act(g.full, lat, Family::OmegaHalf);
    CHECK(fh.transitive);
    for (auto o : fh.stabilizer_orders) CHECK(o == 2);
  }
}

TEST_CASE("stabilizer of the base cell is its cell group") {
  const Lattice lat({3, 2});
  const NamedGroups g = build_named_groups(lat);
  const CellIndex c{Family::Omega, 0, 0};
  const FiniteGroup st = stabilizer(g.full, lat, c);
  CHECK(st.order() == 4);
  for (const auto& x : lat.cell_group(c)) CHECK(st.contains(x));
}

TEST_CASE("subgroups and intersections") {
  const NamedGroups g = build_named_groups(Lattice({3, 2}));
  CHECK(g.quad.is_subgroup_of(g.circles));
  CHECK(g.spheres.intersection_indices(g.circles).size() == g.axes.order());
  CHECK(!g.full.same_elements(g.spheres));
  std::vector<std::size_t> idx{0, 1};
  if (g.full.product(1, 1) != 0) CHECK_THROWS_AS(g.full.subgroup(idx), Error);
}

TEST_CASE("sampled associativity and sphere orbits") {
  const Lattice lat({4, 3});
  const NamedGroups g = build_named_groups(lat);
  Rng rng(21);
  CHECK(table_check(g.full, 512, rng).pass);
  CHECK(hemisphere_orbit_check(lat, g.spheres, 1024, rng).pass);
}
