#include "lawson/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

namespace lawson {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw Error(ErrorCode::Usage, "bad value for " + key + ": '" + v + "'");
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw Error(ErrorCode::Usage, "bad value for " + key + ": '" + v + "'");
  return out;
}

std::string group_of(const std::string& suite) {
  const auto dot = suite.find('.');
  const std::string prefix = dot == std::string::npos ? suite : suite.substr(0, dot);
  if (prefix == "geometry" || prefix == "tessellation") return "lattice";
  return prefix;
}

struct GroupResult {
  std::vector<CheckEntry> checks;
  Json details = Json::object();
};

CheckEntry make_entry(const std::string& id, bool pass, double residual, double tol, const std::string& witness = {}) {
  CheckEntry e;
  e.id = id;
  e.status = pass ? Status::Pass : Status::Fail;
  e.residual = residual;
  e.tolerance = tol;
  if (!pass) e.witness = witness;
  return e;
}

CheckEntry from_check(const std::string& id, const CheckResult& r, double tol) {
  return make_entry(id, r.pass, r.residual, tol, r.witness);
}

CheckEntry skip_entry(const std::string& id, const std::string& reason) {
  CheckEntry e;
  e.id = id;
  e.status = Status::Skip;
  e.reason = reason;
  return e;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Merges per-cell results into one.
void merge(CheckResult& into, const CheckResult& r, const std::string& where) {
  if (!r.pass) into.fail(where + ": " + r.witness, r.residual);
  into.residual = std::max(into.residual, r.residual);
}

GroupResult run_lattice(const Lattice& lat, Rng rng) {
  GroupResult g;
  std::vector<std::array<double, 4>> angles(64);
  for (auto& a : angles) {
    for (double& x : a) x = rng.uniform(0.0, 2 * kPi);
  }
  for (const auto& c : basic_geometry_checks(angles, 1e-9)) {
    g.checks.push_back(make_entry("geometry." + c.item, c.pass, c.residual, 1e-9, c.witness));
  }
  g.checks.push_back(from_check("tessellation.cell-metrics", cell_metrics_check(lat, 1e-12), 1e-12));
  Rng cov = rng.fork(1);
  g.checks.push_back(
      from_check("tessellation.coverage-omega", coverage_check(lat, Family::Omega, 100000, cov, 1e-9), 1e-9));
  g.checks.push_back(
      from_check("tessellation.coverage-omega-half", coverage_check(lat, Family::OmegaHalf, 100000, cov, 1e-9), 1e-9));
  g.checks.push_back(from_check("tessellation.even-odd-partition", even_odd_partition_check(lat), 0.0));
  CheckResult parts;
  Rng bp = rng.fork(2);
  for (const auto& c : lat.cells(Family::Omega)) merge(parts, boundary_parts_check(lat, c, 32, bp), to_string(c));
  g.checks.push_back(from_check("tessellation.boundary-parts", parts, 1e-10));
  Rng cu = rng.fork(3);
  g.checks.push_back(from_check("tessellation.circle-union", circle_union_check(lat, 4096, cu), 1e-10));
  return g;
}

bool same_set(const std::vector<Isometry4>& a, const std::vector<Isometry4>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    if (std::none_of(b.begin(), b.end(), [&](const Isometry4& y) { return x.distance(y) < 1e-9; })) return false;
  }
  return true;
}

GroupResult run_groups(const Lattice& lat, Rng rng) {
  GroupResult g;
  const NamedGroups ng = build_named_groups(lat);
  const GroupCertificate cert = certify_named_groups(ng, lat);
  for (const auto& [item, ok] : cert.items) g.checks.push_back(make_entry("groups." + item, ok, ok ? 0.0 : 1.0, 0.0));
  if (lat.m() != lat.k()) {
    g.checks.push_back(skip_entry("groups.order-full-with-exchange", "the exchange of C and C-perp needs m == k"));
    g.checks.push_back(skip_entry("groups.exchange-normalizes-full", "the exchange of C and C-perp needs m == k"));
  }
  Json orders = Json::object();
  for (const auto& [name, order] : cert.orders) orders[name] = order;
  g.details["orders"] = orders;

  auto action_entry = [&](const std::string& id, const FiniteGroup& grp, Family fam, bool simply,
                          std::size_t stab_order) {
    const GroupAction a = act(grp, lat, fam);
    bool ok = a.homomorphism && a.transitive && (!simply || a.simply_transitive);
    std::string w;
    if (!a.homomorphism) w = "not a homomorphism";
    if (!a.transitive) w = "not transitive";
    if (simply && !a.simply_transitive) w = "not simply transitive";
    for (std::size_t s : a.stabilizer_orders) {
      if (s != stab_order) {
        ok = false;
        w = "stabilizer of order " + std::to_string(s);
      }
    }
    g.checks.push_back(make_entry(id, ok, ok ? 0.0 : 1.0, 0.0, w));
  };
  action_entry("groups.spheres-simply-transitive-on-half-cells", ng.spheres, Family::OmegaHalf, true, 1);
  action_entry("groups.quad-simply-transitive-on-even-cells", ng.quad, Family::OmegaEven, true, 1);
  action_entry("groups.full-transitive-on-even-cells", ng.full, Family::OmegaEven, false, 4);
  action_entry("groups.full-transitive-on-half-cells", ng.full, Family::OmegaHalf, false, 2);

  const CellIndex base{Family::Omega, 0, 0};
  const FiniteGroup stab = stabilizer(ng.full, lat, base);
  const bool stab_ok = same_set(stab.elements(), lat.cell_group(base));
  g.checks.push_back(make_entry("groups.cell-stabilizer-is-cell-group", stab_ok, stab_ok ? 0.0 : 1.0, 0.0,
                                "stabilizer order " + std::to_string(stab.order())));
  const auto tsym = tetra_symmetries(lat.tetra(base));
  bool in_tsym = true;
  for (const auto& x : lat.cell_group(base)) {
    in_tsym = in_tsym && std::any_of(tsym.begin(), tsym.end(), [&](const Isometry4& y) { return x.distance(y) < 1e-9; });
  }
  g.checks.push_back(make_entry("groups.cell-group-preserves-cell", in_tsym, in_tsym ? 0.0 : 1.0, 0.0,
                                "cell group element missing from the cell's symmetries"));
  Rng h = rng.fork(1);
  g.checks.push_back(from_check("groups.sphere-orbits-meet-half-cells-once",
                                hemisphere_orbit_check(lat, ng.spheres, 4096, h), 0.0));
  Rng t = rng.fork(2);
  g.checks.push_back(from_check("groups.table-associativity", table_check(ng.full, 2048, t), 1e-12));
  return g;
}

GroupResult run_orbits(const Lattice& lat, Rng rng) {
  GroupResult g;
  CheckResult rotated, subcells, arc, quad, transversal, projected;
  std::size_t orbits = 0, meeting = 0;
  for (const auto& c : lat.cells(Family::Omega)) {
    const OrbitReport r = verify_orbits(lat, c, 256, 512, rng);
    const std::string where = to_string(c);
    merge(rotated, r.rotated_copies, where);
    merge(subcells, r.subcells, where);
    merge(arc, r.single_arc, where);
    merge(quad, r.quad_orbits, where);
    merge(transversal, r.transversal, where);
    merge(projected, r.projected_disc, where);
    orbits += r.orbits;
    meeting += r.meeting;
  }
  g.checks.push_back(from_check("orbits.rotated-copies-disjoint", rotated, 1e-10));
  g.checks.push_back(from_check("orbits.subcells-met-fully-or-not", subcells, 1e-10));
  g.checks.push_back(from_check("orbits.single-arc-between-boundary-parts", arc, 1e-10));
  g.checks.push_back(from_check("orbits.quadrilateral-orbits-meet-once", quad, 1e-10));
  g.checks.push_back(from_check("orbits.transversal-at-ends", transversal, 1e-10));
  g.checks.push_back(from_check("orbits.projected-cell-is-disc", projected, 0.0));
  g.details = Json{{"orbits", orbits}, {"meeting", meeting}};
  return g;
}

struct DiscStage {
  GroupResult disc;
  GroupResult surface;
};

GroupResult run_disc_checks(const Lattice& lat, const RunConfig& cfg, const DiscSolution& sol, Rng rng) {
  GroupResult g;
  const DiscReport& r = sol.report;
  g.details = disc_report_json(r);

  CheckEntry conv = make_entry("disc.converged", r.converged, r.levels.back().final_step, cfg.tol_grad,
                               "iteration limit reached");
  for (const auto& w : r.warnings) {
    if (w.rfind("disc leaves", 0) == 0) continue;
    conv.warning += (conv.warning.empty() ? "" : "; ") + w;
  }
  g.checks.push_back(conv);
  g.checks.push_back(make_entry("disc.max-residual", r.max_residual < 1e-3, r.max_residual, 1e-3,
                                "max mean-curvature residual " + num(r.max_residual)));
  if (r.levels.size() >= 2) {
    const double prev = r.levels[r.levels.size() - 2].max_residual;
    const double ratio = prev / r.max_residual;
    g.checks.push_back(make_entry("disc.residual-halves-under-refinement", ratio >= 2.0, ratio, 2.0,
                                  "ratio " + num(ratio)));
    bool decreasing = true;
    for (std::size_t i = 1; i < r.levels.size(); ++i) decreasing = decreasing && r.levels[i].area < r.levels[i - 1].area;
    g.checks.push_back(make_entry("disc.area-decreases-under-refinement", decreasing, 0.0, 0.0,
                                  "area did not decrease between levels"));
  } else {
    g.checks.push_back(skip_entry("disc.residual-halves-under-refinement", "needs at least two levels"));
    g.checks.push_back(skip_entry("disc.area-decreases-under-refinement", "needs at least two levels"));
  }
  g.checks.push_back(make_entry("disc.boundary-on-quadrilateral", r.boundary_deviation < 1e-10, r.boundary_deviation,
                                1e-10, "boundary deviation " + num(r.boundary_deviation)));
  g.checks.push_back(make_entry("disc.cell-symmetric", r.symmetry_deviation < cfg.tol_sym, r.symmetry_deviation,
                                cfg.tol_sym, "symmetry deviation " + num(r.symmetry_deviation)));
  CheckEntry cont = make_entry("disc.inside-cell", true, r.containment_violation, 1e-6);
  if (r.containment_violation > 1e-6) cont.warning = "disc leaves its cell by " + num(r.containment_violation);
  g.checks.push_back(cont);

  const GraphicalReport gr = verify_graphical(sol.mesh, lat, 512, rng);
  g.checks.push_back(make_entry("disc.graphical-over-projection", gr.pass(),
                                static_cast<double>(gr.overlaps + gr.orbits_bad), 0.0, gr.witness));
  g.details["graphical"] = Json{{"overlaps", gr.overlaps},
                                {"orientation_flips", gr.orientation_flips},
                                {"max_angle_defect", gr.max_angle_defect},
                                {"winding", gr.winding},
                                {"min_transversality", gr.min_transversality},
                                {"min_transversality_corner", gr.min_transversality_corner},
                                {"orbits", gr.orbits},
                                {"orbits_bad", gr.orbits_bad}};
  if (gr.min_transversality_corner < gr.tangency_tol) {
    g.checks.back().warning = "near-tangent orbit directions close to the corners: " + num(gr.min_transversality_corner);
  }

  try {
    const Curves c = extract_curves(sol.mesh, lat);
    std::string w;
    for (const auto& q : c.quadrants) {
      if (!q.pass) w = q.witness;
    }
    g.checks.push_back(make_entry("disc.bisecting-curves-cut-four-discs", c.pass(), 0.0, 0.0, w));
    g.checks.push_back(make_entry("disc.curves-meet-on-axis", c.x_offset < 1e-9, c.x_offset, 1e-9,
                                  "common point off the axis by " + num(c.x_offset)));
    g.details["x_symmetric_gap"] = c.x_symmetric_gap;
  } catch (const Error& e) {
    g.checks.push_back(make_entry("disc.bisecting-curves-cut-four-discs", false, 1.0, 0.0, e.what()));
    g.checks.push_back(make_entry("disc.curves-meet-on-axis", false, 1.0, 1e-9, e.what()));
  }
  return g;
}

bool all_quadrilateral_pieces(const LedgerReport& lg, std::string& witness) {
  for (const auto& c : lg.cells) {
    if (c.b_tilde != 1 || c.g_tilde != 0 || c.crossings.size() != 4 || c.classification != "quadrilateral") {
      witness = to_string(c.cell) + ": b=" + std::to_string(c.b_tilde) + " g=" + std::to_string(c.g_tilde) +
                " crossings=" + std::to_string(c.crossings.size()) + " " + c.classification;
      return false;
    }
  }
  return true;
}

GroupResult run_surface_checks(const Lattice& lat, const DiscSolution& sol, Rng rng) {
  GroupResult g;
  const NamedGroups ng = build_named_groups(lat);
  const ClosedSurfaceMesh cs = assemble(lat, sol.mesh, ng.quad);
  CheckEntry asm_entry = make_entry("surface.assembled-closed", true, cs.max_cell_violation, 1e-6);
  if (cs.max_cell_violation > 1e-6) asm_entry.warning = "copies leave their cells by " + num(cs.max_cell_violation);
  g.checks.push_back(asm_entry);

  auto coarse_ledger = std::async(std::launch::async, [&]() -> std::optional<LedgerReport> {
    if (sol.coarser.empty()) return std::nullopt;
    return ledger(assemble(lat, sol.coarser.back(), ng.quad).mesh, lat);
  });
  auto symmetry = std::async(std::launch::async, [&] { return symmetry_check(cs.mesh, ng.full); });

  const Topology topo = topology(cs.mesh);
  const long genus = static_cast<long>(lat.m() - 1) * (lat.k() - 1);
  g.details["topology"] = topology_json(topo);
  g.details["expected_genus"] = genus;
  g.checks.push_back(make_entry("surface.genus", topo.genus == genus && topo.chi == 2 - 2 * genus,
                                static_cast<double>(std::abs(topo.genus - genus)), 0.0,
                                "genus " + std::to_string(topo.genus) + ", chi " + std::to_string(topo.chi)));
  g.checks.push_back(make_entry("surface.closed-orientable-connected",
                                topo.boundary_loops == 0 && topo.orientable && topo.connected, 0.0, 0.0,
                                "boundary loops " + std::to_string(topo.boundary_loops) +
                                    (topo.orientable ? "" : ", not orientable") +
                                    (topo.connected ? "" : ", not connected")));
  g.checks.push_back(from_check("surface.meets-axes-at-half-integer-points", axis_meet_check(cs.mesh, lat), 1e-9));
  g.checks.push_back(from_check("surface.contains-quadrilateral-circles", quad_circles_check(cs.mesh, lat), 1e-9));

  const SymmetryReport sym = symmetry.get();
  g.checks.push_back(make_entry("surface.full-group-symmetric", sym.max_deviation < 10 * kWeldTol, sym.max_deviation,
                                10 * kWeldTol, "deviation " + num(sym.max_deviation)));
  std::size_t side_bad = 0, orient_bad = 0;
  for (std::size_t i = 0; i < ng.full.order(); ++i) {
    const Isometry4& e = ng.full.element(i);
    if (sym.elements[i].preserves_sides != ng.spheres.contains(e)) ++side_bad;
    if (sym.elements[i].preserves_orientation != ng.mplus.contains(e)) ++orient_bad;
  }
  g.checks.push_back(make_entry("surface.side-preserving-subgroup-is-sphere-group", side_bad == 0,
                                static_cast<double>(side_bad), 0.0,
                                std::to_string(side_bad) + " elements disagree"));
  g.checks.push_back(make_entry("surface.orientation-preserving-subgroup-is-mplus", orient_bad == 0,
                                static_cast<double>(orient_bad), 0.0,
                                std::to_string(orient_bad) + " elements disagree"));

  Rng ur = rng.fork(1);
  const UmbilicReport um = umbilic_probe(cs.mesh, lat, 1000, ur);
  double worst = 0.0;
  for (double s : um.candidate_stat) worst = std::max(worst, s);
  g.checks.push_back(make_entry("surface.umbilics-at-candidates", um.pass, worst, um.percentile5, um.witness));
  g.details["umbilics"] = umbilic_json(um);

  const LedgerReport lg = ledger(cs.mesh, lat);
  g.details["ledger"] = ledger_json(lg);
  std::string w;
  const bool pieces = all_quadrilateral_pieces(lg, w);
  g.checks.push_back(make_entry("surface.ledger-pieces-are-quadrilaterals", pieces, 0.0, 0.0, w));
  const double tol = 5e-2 * kPi;
  const double worst_res = std::max(lg.max_residual, lg.max_measured_residual);
  g.checks.push_back(make_entry("surface.ledger-angle-sum", worst_res < tol, worst_res, tol,
                                "exact " + num(lg.max_residual) + ", measured " + num(lg.max_measured_residual)));
  const auto coarse = coarse_ledger.get();
  if (coarse) {
    const bool shrinks = lg.max_measured_residual < coarse->max_measured_residual && lg.max_residual <= tol;
    g.checks.push_back(make_entry("surface.ledger-residual-shrinks", shrinks, lg.max_measured_residual,
                                  coarse->max_measured_residual,
                                  "measured " + num(coarse->max_measured_residual) + " -> " +
                                      num(lg.max_measured_residual)));
    g.details["ledger_coarser_max_measured_residual"] = coarse->max_measured_residual;
  } else {
    g.checks.push_back(skip_entry("surface.ledger-residual-shrinks", "needs a coarser level"));
  }
  return g;
}

GroupResult error_result(const std::string& group, const std::string& what) {
  GroupResult g;
  g.checks.push_back(make_entry(group + ".error", false, 1.0, 0.0, what));
  return g;
}

template <class F>
GroupResult guarded(const std::string& group, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return error_result(group, e.what());
  }
}

}  // namespace

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::Usage, "line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "m") {
      cfg.m = parse_number<int>(key, val);
    } else if (key == "k") {
      cfg.k = parse_number<int>(key, val);
    } else if (key == "level") {
      cfg.level = parse_number<int>(key, val);
    } else if (key == "tol-grad") {
      cfg.tol_grad = parse_double(key, val);
    } else if (key == "tol-sym") {
      cfg.tol_sym = parse_double(key, val);
    } else if (key == "out") {
      cfg.out = val;
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(key, val);
    } else if (key == "suite") {
      cfg.suite = val;
    } else if (key == "format") {
      cfg.format = val;
    } else {
      throw Error(ErrorCode::Usage, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
}

const std::vector<std::string>& suite_groups() {
  static const std::vector<std::string> g{"lattice", "groups", "orbits", "disc", "surface"};
  return g;
}

void validate(const RunConfig& cfg) {
  if (cfg.m < 3 || cfg.k < 2) {
    throw Error(ErrorCode::UnsupportedParameters,
                "need m >= 3 and k >= 2, got m=" + std::to_string(cfg.m) + " k=" + std::to_string(cfg.k));
  }
  if (cfg.level < 2 || cfg.level > 9) throw Error(ErrorCode::InvalidInput, "level must be in [2, 9]");
  if (!(cfg.tol_grad > 0) || !(cfg.tol_sym > 0)) throw Error(ErrorCode::InvalidInput, "tolerances must be positive");
  if (cfg.format != "obj" && cfg.format != "json") throw Error(ErrorCode::InvalidInput, "format must be obj or json");
  const auto& groups = suite_groups();
  if (cfg.suite != "all" && std::find(groups.begin(), groups.end(), group_of(cfg.suite)) == groups.end()) {
    throw Error(ErrorCode::InvalidInput, "unknown suite '" + cfg.suite + "'");
  }
}

Json config_json(const RunConfig& cfg) {
  return Json{{"m", cfg.m},
              {"k", cfg.k},
              {"level", cfg.level},
              {"tol_grad", cfg.tol_grad},
              {"tol_sym", cfg.tol_sym},
              {"seed", cfg.seed},
              {"suite", cfg.suite}};
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Skip:
      return "skip";
  }
  return "fail";
}

bool VerificationSuite::pass() const {
  return !checks.empty() &&
         std::none_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.status == Status::Fail; });
}

VerificationSuite run_suite(const RunConfig& cfg) {
  validate(cfg);
  VerificationSuite out;
  out.config = cfg;
  out.details = Json::object();
  const std::string selected = cfg.suite == "all" ? "all" : group_of(cfg.suite);
  auto wanted = [&](const std::string& g) { return selected == "all" || selected == g; };
  const Lattice lat({cfg.m, cfg.k});
  Rng root(cfg.seed);
  Rng r_lat = root.fork(11), r_grp = root.fork(12), r_orb = root.fork(13), r_disc = root.fork(14),
      r_surf = root.fork(15);

  std::map<std::string, std::future<GroupResult>> tasks;
  if (wanted("lattice")) {
    tasks["lattice"] = std::async(std::launch::async, [&] { return guarded("lattice", [&] { return run_lattice(lat, r_lat); }); });
  }
  if (wanted("groups")) {
    tasks["groups"] = std::async(std::launch::async, [&] { return guarded("groups", [&] { return run_groups(lat, r_grp); }); });
  }
  if (wanted("orbits")) {
    tasks["orbits"] = std::async(std::launch::async, [&] { return guarded("orbits", [&] { return run_orbits(lat, r_orb); }); });
  }
  std::future<DiscStage> disc_task;
  if (wanted("disc") || wanted("surface")) {
    disc_task = std::async(std::launch::async, [&] {
      DiscStage st;
      std::optional<DiscSolution> sol;
      std::string err;
      try {
        SolverOptions opts;
        opts.level = cfg.level;
        opts.grad_tol = cfg.tol_grad;
        opts.sym_tol = cfg.tol_sym;
        sol = solve_disc(lat, opts);
      } catch (const Error& e) {
        err = e.what();
      }
      if (!sol) {
        st.disc = error_result("disc", err);
        st.surface = error_result("surface", "upstream disc solve failed: " + err);
        return st;
      }
      if (wanted("disc")) st.disc = guarded("disc", [&] { return run_disc_checks(lat, cfg, *sol, r_disc); });
      if (wanted("surface")) st.surface = guarded("surface", [&] { return run_surface_checks(lat, *sol, r_surf); });
      return st;
    });
  }

  std::map<std::string, GroupResult> results;
  for (auto& [name, fut] : tasks) results[name] = fut.get();
  if (disc_task.valid()) {
    DiscStage st = disc_task.get();
    if (wanted("disc")) results["disc"] = std::move(st.disc);
    if (wanted("surface")) results["surface"] = std::move(st.surface);
  }
  for (const auto& name : suite_groups()) {
    const auto it = results.find(name);
    if (it == results.end()) continue;
    for (auto& c : it->second.checks) {
      if (cfg.suite == "all" || cfg.suite == selected || c.id == cfg.suite || c.id == name + ".error") {
        out.checks.push_back(c);
      }
    }
    out.details[name] = it->second.details;
  }
  if (out.checks.empty()) throw Error(ErrorCode::InvalidInput, "no check named '" + cfg.suite + "'");
  return out;
}

Json suite_json(const VerificationSuite& s) {
  Json checks = Json::array();
  std::size_t n_pass = 0, n_fail = 0, n_skip = 0;
  for (const auto& c : s.checks) {
    Json e{{"id", c.id}, {"status", std::string(to_string(c.status))}, {"residual", c.residual},
           {"tolerance", c.tolerance}};
    if (!c.witness.empty()) e["witness"] = c.witness;
    if (!c.reason.empty()) e["reason"] = c.reason;
    if (!c.warning.empty()) e["warning"] = c.warning;
    checks.push_back(e);
    if (c.status == Status::Pass) ++n_pass;
    if (c.status == Status::Fail) ++n_fail;
    if (c.status == Status::Skip) ++n_skip;
  }
  return Json{{"config", config_json(s.config)},
              {"pass", s.pass()},
              {"summary", Json{{"passed", n_pass}, {"failed", n_fail}, {"skipped", n_skip}}},
              {"checks", checks},
              {"details", s.details}};
}

std::string suite_text(const VerificationSuite& s) {
  std::ostringstream os;
  os << "lawson verify m=" << s.config.m << " k=" << s.config.k << " level=" << s.config.level
     << " seed=" << s.config.seed << " suite=" << s.config.suite << "\n";
  std::size_t width = 0;
  for (const auto& c : s.checks) width = std::max(width, c.id.size());
  for (const auto& c : s.checks) {
    std::string status(to_string(c.status));
    std::transform(status.begin(), status.end(), status.begin(), ::toupper);
    os << status << "  " << c.id << std::string(width - c.id.size() + 2, ' ');
    if (c.status == Status::Skip) {
      os << "(" << c.reason << ")";
    } else {
      os << "residual " << num(c.residual);
      if (c.tolerance > 0) os << " tol " << num(c.tolerance);
      if (!c.witness.empty()) os << "  [" << c.witness << "]";
    }
    if (!c.warning.empty()) os << "  warning: " << c.warning;
    os << "\n";
  }
  os << (s.pass() ? "all checks passed" : "some checks failed") << "\n";
  return os.str();
}

}  // namespace lawson
