// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "lawson/harness.hpp"

using namespace lawson;

namespace {

constexpr double kPi = std::numbers::pi;
const std::vector<std::pair<int, int>> kPairs{{3, 2}, {4, 2}, {3, 3}, {4, 3}};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Built {
  DiscSolution disc;
  NamedGroups groups;
  ClosedSurfaceMesh surface;
  double solve_seconds = 0.0;
};

Built& built(int m, int k, int level) {
  static std::map<std::array<int, 3>, Built> cache;
  const std::array<int, 3> key{m, k, level};
  auto it = cache.find(key);
  if (it == cache.end()) {
    const Lattice lat({m, k});
    SolverOptions o;
    o.level = level;
    const auto t0 = std::chrono::steady_clock::now();
    DiscSolution d = solve_disc(lat, o);
    const double t = seconds_since(t0);
    NamedGroups g = build_named_groups(lat);
    ClosedSurfaceMesh s = assemble(lat, d.mesh, g.quad);
    it = cache.emplace(key, Built{std::move(d), std::move(g), std::move(s), t}).first;
  }
  return it->second;
}

std::string pair_name(int m, int k) { return "(" + std::to_string(m) + "," + std::to_string(k) + ")"; }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED[" << what << "]";
    }
  }
};

Outcome group_orders() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (auto [m, k] : kPairs) {
    const NamedGroups g = build_named_groups(Lattice({m, k}));
    const std::size_t km = static_cast<std::size_t>(m * k);
    const bool ok = g.full.order() == 8 * km && g.spheres.order() == 4 * km && g.circles.order() == 4 * km &&
                    g.mplus.order() == 4 * km && g.quad.order() == 2 * km && g.axes.order() == 2 * km;
    o.detail << " " << pair_name(m, k) << ":" << g.full.order() << "/" << g.spheres.order() << "/"
             << g.circles.order() << "/" << g.mplus.order() << "/" << g.quad.order() << "/" << g.axes.order();
    o.require(ok, pair_name(m, k));
  }
  const double t = seconds_since(t0);
  o.detail << " time " << t << "s";
  o.require(t < 5.0, "runtime");
  return o;
}

Outcome group_actions() {
  Outcome o;
  for (auto [m, k] : kPairs) {
    const Lattice lat({m, k});
    const NamedGroups g = build_named_groups(lat);
    const GroupAction s = act(g.spheres, lat, Family::OmegaHalf);
    const GroupAction q = act(g.quad, lat, Family::OmegaEven);
    const GroupAction f = act(g.full, lat, Family::OmegaEven);
    const GroupAction fh = act(g.full, lat, Family::OmegaHalf);
    bool ok = s.simply_transitive && q.simply_transitive && f.transitive && fh.transitive;
    for (auto x : f.stabilizer_orders) ok = ok && x == 4;
    for (auto x : fh.stabilizer_orders) ok = ok && x == 2;
    o.require(ok, pair_name(m, k));
  }
  o.detail << " sphere group simply transitive on half cells, quadrilateral group on even cells,"
              " full group stabilizers 4 and 2";
  return o;
}

Outcome cell_metrics_and_coverage() {
  Outcome o;
  Rng rng(101);
  for (auto [m, k] : kPairs) {
    const Lattice lat({m, k});
    const CheckResult metrics = cell_metrics_check(lat, 1e-12);
    o.require(metrics.pass, pair_name(m, k) + " metrics " + metrics.witness);
    for (Family f : {Family::Omega, Family::OmegaHalf}) {
      const CheckResult c = coverage_check(lat, f, 100000, rng, 1e-9);
      o.require(c.pass, pair_name(m, k) + " coverage " + c.witness);
    }
    o.detail << " " << pair_name(m, k) << " metric residual " << metrics.residual;
  }
  return o;
}

Outcome basic_geometry() {
  Outcome o;
  Rng rng(102);
  std::vector<std::array<double, 4>> angles(64);
  for (auto& a : angles) {
    for (double& x : a) x = rng.uniform(0, 2 * kPi);
  }
  const auto checks = basic_geometry_checks(angles, 1e-9);
  double worst = 0;
  for (const auto& c : checks) {
    o.require(c.pass, c.item + " " + c.witness);
    worst = std::max(worst, c.residual);
  }
  o.require(checks.size() == 9, "item count");
  o.detail << " " << checks.size() << " items, worst residual " << worst;
  return o;
}

Outcome orbit_structure() {
  Outcome o;
  Rng rng(103);
  std::size_t cells = 0;
  for (auto [m, k] : kPairs) {
    const Lattice lat({m, k});
    for (const auto& c : lat.cells(Family::Omega)) {
      const OrbitReport r = verify_orbits(lat, c, 256, 512, rng);
      o.require(r.pass(), pair_name(m, k) + " " + to_string(c));
      o.require(r.projected_disc.pass, "projected disc winding");
      ++cells;
    }
  }
  o.detail << " " << cells << " cells x 256 orbits";
  return o;
}

Outcome disc_convergence() {
  Outcome o;
  const Built& b = built(3, 2, 5);
  const DiscReport& r = b.disc.report;
  const auto& lv = r.levels;
  const double ratio = lv.size() >= 2 ? lv[lv.size() - 2].max_residual / lv.back().max_residual : 0.0;
  o.detail << " max residual " << r.max_residual << ", boundary " << r.boundary_deviation << ", symmetry "
           << r.symmetry_deviation << ", level 4->5 ratio " << ratio << ", time " << b.solve_seconds << "s";
  o.require(r.max_residual < 1e-3, "residual");
  o.require(r.boundary_deviation < 1e-10, "boundary");
  o.require(r.symmetry_deviation < 1e-10, "symmetry");
  o.require(lv.size() >= 2 && lv[lv.size() - 2].level == 4 && ratio >= 2.0, "refinement ratio");
  o.require(b.solve_seconds < 60.0, "runtime");
  return o;
}

Outcome graphicality() {
  Outcome o;
  for (auto [m, k] : {std::pair{3, 2}, {4, 3}}) {
    const Lattice lat({m, k});
    Rng rng(104);
    const GraphicalReport g = verify_graphical(built(m, k, 5).disc.mesh, lat, 512, rng);
    o.detail << " " << pair_name(m, k) << " overlaps " << g.overlaps << ", orbits " << g.orbits << " bad "
             << g.orbits_bad << ", winding " << g.winding;
    o.require(g.overlaps == 0 && g.orbits == 512 && g.orbits_bad == 0 && g.pass(), pair_name(m, k) + " " + g.witness);
  }
  return o;
}

Outcome genus() {
  Outcome o;
  for (auto [m, k, g] : {std::tuple{3, 2, 2L}, {4, 3, 6L}}) {
    const Topology t = topology(built(m, k, 5).surface.mesh);
    o.detail << " M" << pair_name(m, k) << " chi " << t.chi << " genus " << t.genus;
    o.require(t.genus == g && t.chi == 2 - 2 * g && t.orientable && t.connected && t.boundary_loops == 0,
              pair_name(m, k));
  }
  return o;
}

Outcome gauss_bonnet_ledger() {
  Outcome o;
  for (auto [m, k] : {std::pair{3, 2}, {4, 3}}) {
    const Lattice lat({m, k});
    Built& b = built(m, k, 5);
    const LedgerReport fine = ledger(b.surface.mesh, lat);
    const LedgerReport coarse = ledger(assemble(lat, b.disc.coarser.back(), b.groups.quad).mesh, lat);
    bool pieces = true;
    for (const auto& c : fine.cells) {
      pieces = pieces && c.b_tilde == 1 && c.g_tilde == 0 && c.crossings.size() == 4 && c.classification == "quadrilateral";
    }
    o.detail << " " << pair_name(m, k) << " cells " << fine.cells.size() << ", exact residual " << fine.max_residual
             << ", measured " << coarse.max_measured_residual << " -> " << fine.max_measured_residual;
    o.require(pieces, pair_name(m, k) + " piece structure");
    o.require(fine.max_residual < 5e-2 * kPi && fine.max_measured_residual < 5e-2 * kPi, "residual");
    o.require(fine.max_measured_residual < coarse.max_measured_residual, "refinement");
  }
  return o;
}

Outcome umbilics() {
  Outcome o;
  for (auto [m, k] : {std::pair{3, 2}, {3, 3}, {4, 3}}) {
    const Lattice lat({m, k});
    Rng rng(105);
    const UmbilicReport u = umbilic_probe(built(m, k, 5).surface.mesh, lat, 1000, rng);
    double worst = 0;
    for (double s : u.candidate_stat) worst = std::max(worst, s);
    const std::size_t want = k == 2 ? 4 : static_cast<std::size_t>(2 * k + 2 * m);
    o.detail << " " << pair_name(m, k) << " " << u.candidate_names.size() << " candidates, worst " << worst
             << " < p5 " << u.percentile5;
    o.require(u.pass && u.candidate_names.size() == want, pair_name(m, k) + " " + u.witness);
  }
  return o;
}

Outcome symmetry_subgroups() {
  Outcome o;
  for (auto [m, k] : {std::pair{3, 2}, {4, 3}}) {
    const Built& b = built(m, k, 5);
    const SymmetryReport r = symmetry_check(b.surface.mesh, b.groups.full);
    std::size_t sides = 0, orient = 0;
    for (std::size_t i = 0; i < b.groups.full.order(); ++i) {
      const Isometry4& g = b.groups.full.element(i);
      sides += r.elements[i].preserves_sides != b.groups.spheres.contains(g);
      orient += r.elements[i].preserves_orientation != b.groups.mplus.contains(g);
    }
    o.detail << " " << pair_name(m, k) << " deviation " << r.max_deviation << ", mismatches " << sides << "/" << orient;
    o.require(sides == 0 && orient == 0 && r.max_deviation < 10 * kWeldTol, pair_name(m, k));
  }
  return o;
}

Outcome deterministic_json() {
  Outcome o;
  RunConfig c;
  c.seed = 2024;
  const std::string a = suite_json(run_suite(c)).dump();
  const std::string b = suite_json(run_suite(c)).dump();
  o.detail << " " << a.size() << " bytes";
  o.require(a == b, "json differs");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"group-orders", group_orders},
      {"group-actions", group_actions},
      {"cell-metrics-and-coverage", cell_metrics_and_coverage},
      {"basic-geometry", basic_geometry},
      {"orbit-structure", orbit_structure},
      {"disc-convergence-3-2", disc_convergence},
      {"disc-graphical", graphicality},
      {"surface-genus", genus},
      {"gauss-bonnet-ledger", gauss_bonnet_ledger},
      {"umbilic-locations", umbilics},
      {"symmetry-subgroups", symmetry_subgroups},
      {"deterministic-json", deterministic_json},
  };
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
      Outcome o = run();
      pass = o.pass;
      detail = o.detail.str();
    } catch (const std::exception& e) {
      detail = std::string(" error: ") + e.what();
    }
    std::printf("%s %s:%s [%.2fs]\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    failed += pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
