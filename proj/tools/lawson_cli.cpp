#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lawson/harness.hpp"

using namespace lawson;

namespace {

struct Flags {
  std::optional<int> m, k, level;
  std::optional<double> tol_grad, tol_sym;
  std::optional<std::string> out, suite, format, config;
  std::optional<std::uint64_t> seed;
  std::vector<double> pole;
};

void add_flags(CLI::App* app, Flags& f) {
  app->add_option("--m", f.m, "order of the C-side lattice (m >= 3)");
  app->add_option("--k", f.k, "order of the C-perp-side lattice (k >= 2)");
  app->add_option("--level", f.level, "subdivision level of the disc (2..9)");
  app->add_option("--tol-grad", f.tol_grad, "solver step tolerance");
  app->add_option("--tol-sym", f.tol_sym, "symmetry deviation tolerance");
  app->add_option("--out", f.out, "output directory");
  app->add_option("--seed", f.seed, "sampling seed");
  app->add_option("--suite", f.suite, "check group or check id (verify, report)");
  app->add_option("--format", f.format, "obj or json (export)");
  app->add_option("--config", f.config, "key=value file; flags take precedence");
}

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  if (f.config) apply_config_text(cfg, read_file(*f.config));
  if (f.m) cfg.m = *f.m;
  if (f.k) cfg.k = *f.k;
  if (f.level) cfg.level = *f.level;
  if (f.tol_grad) cfg.tol_grad = *f.tol_grad;
  if (f.tol_sym) cfg.tol_sym = *f.tol_sym;
  if (f.out) cfg.out = *f.out;
  if (f.seed) cfg.seed = *f.seed;
  if (f.suite) cfg.suite = *f.suite;
  if (f.format) cfg.format = *f.format;
  validate(cfg);
  return cfg;
}

std::filesystem::path out_path(const RunConfig& cfg, const std::string& name) {
  return std::filesystem::path(cfg.out) / name;
}

void write_json(const std::filesystem::path& p, const Json& j) { write_file(p, j.dump(2) + "\n"); }

DiscSolution solve(const Lattice& lat, const RunConfig& cfg) {
  SolverOptions opts;
  opts.level = cfg.level;
  opts.grad_tol = cfg.tol_grad;
  opts.sym_tol = cfg.tol_sym;
  return solve_disc(lat, opts);
}

std::string obj_text(const TriMeshS3& mesh, const Vec4& pole, bool comment_4d) {
  std::ostringstream os;
  os << "# lawson mesh, stereographic from pole " << pole.transpose() << "\n";
  write_obj(os, mesh, Stereographic(pole), comment_4d);
  return os.str();
}

Vec4 choose_pole(const Flags& f, const Lattice& lat, const TriMeshS3& mesh) {
  Vec4 pole = default_export_pole(lat);
  if (!f.pole.empty()) {
    if (f.pole.size() != 4) throw Error(ErrorCode::Usage, "--pole needs four coordinates");
    pole = Vec4(f.pole[0], f.pole[1], f.pole[2], f.pole[3]);
    if (pole.norm() < 1e-12) throw Error(ErrorCode::Usage, "--pole must be non-zero");
    pole.normalize();
  }
  if (pole_clearance(mesh, pole) < 1e-6) throw Error(ErrorCode::InvalidInput, "pole lies on the surface");
  return pole;
}

int cmd_tessellate(const RunConfig& cfg) {
  const Lattice lat({cfg.m, cfg.k});
  const auto p = out_path(cfg, "lattice.json");
  write_json(p, lattice_json(lat));
  std::cout << "cells per family: " << lat.cells(Family::Omega).size() << "\n";
  const CheckResult metrics = cell_metrics_check(lat);
  std::cout << "cell metrics: " << (metrics.pass ? "ok" : "FAIL " + metrics.witness) << "\n";
  std::cout << "wrote " << p.string() << "\n";
  return metrics.pass ? 0 : 1;
}

int cmd_groups(const RunConfig& cfg) {
  const Lattice lat({cfg.m, cfg.k});
  const NamedGroups g = build_named_groups(lat);
  const GroupCertificate cert = certify_named_groups(g, lat);
  Json j{{"m", cfg.m},           {"k", cfg.k},           {"spheres", group_json(g.spheres)},
         {"quad", group_json(g.quad)}, {"axes", group_json(g.axes)}, {"circles", group_json(g.circles)},
         {"mplus", group_json(g.mplus)}, {"full", group_json(g.full)}};
  const auto p = out_path(cfg, "groups.json");
  write_json(p, j);
  for (const auto& [name, order] : cert.orders) std::cout << name << ": " << order << "\n";
  for (const auto& [item, ok] : cert.items) {
    if (!ok) std::cout << "FAIL " << item << "\n";
  }
  std::cout << "wrote " << p.string() << "\n";
  return cert.pass() ? 0 : 1;
}

int cmd_disc(const RunConfig& cfg) {
  const Lattice lat({cfg.m, cfg.k});
  const DiscSolution sol = solve(lat, cfg);
  const auto& r = sol.report;
  const Vec4 pole = default_export_pole(lat);
  Json j{{"m", cfg.m}, {"k", cfg.k}, {"level", cfg.level}, {"mesh", mesh_json(sol.mesh)},
         {"residuals", mean_curvature_residuals(sol.mesh)}, {"report", disc_report_json(r)}};
  write_file(out_path(cfg, "disc.obj"), obj_text(sol.mesh, pole, true));
  write_json(out_path(cfg, "disc.json"), j);
  std::printf("level %d: %zu vertices, %zu triangles, area %.12g\n", cfg.level, sol.mesh.num_vertices(),
              sol.mesh.num_triangles(), r.area);
  std::printf("max residual %.3e, boundary deviation %.3e, symmetry deviation %.3e\n", r.max_residual,
              r.boundary_deviation, r.symmetry_deviation);
  for (const auto& w : r.warnings) std::printf("warning: %s\n", w.c_str());
  std::cout << "wrote " << out_path(cfg, "disc.obj").string() << " and disc.json\n";
  return r.converged ? 0 : 1;
}

int cmd_assemble(const RunConfig& cfg, const Flags& f, bool export_only) {
  const Lattice lat({cfg.m, cfg.k});
  const DiscSolution sol = solve(lat, cfg);
  const NamedGroups g = build_named_groups(lat);
  const ClosedSurfaceMesh cs = assemble(lat, sol.mesh, g.quad);
  const Topology t = topology(cs.mesh);
  const Vec4 pole = choose_pole(f, lat, cs.mesh);
  Json j{{"m", cfg.m},
         {"k", cfg.k},
         {"level", cfg.level},
         {"pole", Json::array({pole[0], pole[1], pole[2], pole[3]})},
         {"topology", topology_json(t)},
         {"mesh", mesh_json(cs.mesh)}};
  const bool obj = !export_only || cfg.format == "obj";
  if (obj) write_file(out_path(cfg, "surface.obj"), obj_text(cs.mesh, pole, false));
  write_json(out_path(cfg, "surface.json"), j);
  std::printf("M[%d,%d]: V=%ld E=%ld F=%ld chi=%ld genus %ld%s\n", cfg.m, cfg.k, t.vertices, t.edges, t.faces,
              t.chi, t.genus, t.orientable ? "" : " (not orientable)");
  std::cout << "wrote " << (obj ? out_path(cfg, "surface.obj").string() + " and " : std::string())
            << out_path(cfg, "surface.json").string() << "\n";
  return t.genus == static_cast<long>(cfg.m - 1) * (cfg.k - 1) ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg, bool text_only) {
  const VerificationSuite s = run_suite(cfg);
  const std::string text = suite_text(s);
  std::cout << text;
  if (text_only) {
    write_file(out_path(cfg, "report.txt"), text);
  } else {
    write_json(out_path(cfg, "verify.json"), suite_json(s));
  }
  return s.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lawson surfaces in S^3: tessellations, symmetry groups, minimal discs and checks"};
  app.require_subcommand(1);
  Flags f;
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"tessellate", "write the cells of the tessellations"},
                      {"groups", "build the symmetry groups and their tables"},
                      {"disc", "solve the minimal disc and write a checkpoint"},
                      {"assemble", "assemble the closed surface and report its topology"},
                      {"verify", "run the check suite"},
                      {"export", "write the closed surface as OBJ or JSON"},
                      {"report", "run the check suite and print a text report"}};
  std::map<std::string, CLI::App*> apps;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_flags(sub, f);
    apps[s.name] = sub;
  }
  apps["export"]->add_option("--pole", f.pole, "projection pole as four coordinates")->expected(4);
  apps["assemble"]->add_option("--pole", f.pole, "projection pole as four coordinates")->expected(4);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  RunConfig cfg;
  try {
    cfg = resolve(f);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Io ? 1 : 2;
  }

  try {
    if (apps["tessellate"]->parsed()) return cmd_tessellate(cfg);
    if (apps["groups"]->parsed()) return cmd_groups(cfg);
    if (apps["disc"]->parsed()) return cmd_disc(cfg);
    if (apps["assemble"]->parsed()) return cmd_assemble(cfg, f, false);
    if (apps["export"]->parsed()) return cmd_assemble(cfg, f, true);
    if (apps["verify"]->parsed()) return cmd_verify(cfg, false);
    if (apps["report"]->parsed()) return cmd_verify(cfg, true);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Usage ? 2 : 1;
  }
  return 2;
}
