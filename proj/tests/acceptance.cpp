// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "starvis/convergence.hpp"
#include "starvis/field_io.hpp"
#include "starvis/multiview.hpp"
#include "starvis/scenes.hpp"
#include "starvis/sweep_solver.hpp"
#include "support.hpp"

using namespace starvis;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += why;
    }
  }
  void note(const std::string& text) {
    if (!detail.empty()) detail += "; ";
    detail += text;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

SolveReport solve_upper(const ScalarField& g, const Viewpoint& vp, std::optional<double> value = std::nullopt) {
  SolverConfig cfg;
  cfg.viewpoint = vp;
  cfg.viewpoint_value = value;
  return solve(g, cfg);
}

Outcome table_one() {
  Outcome out;
  const double reference[] = {9.12e-2, 4.49e-2, 2.23e-2, 1.11e-2, 5.54e-3};
  const int ns[] = {32, 64, 128, 256, 512};
  const auto rows = run_convergence(scenes::cone(32), ns);
  std::string errors = "errors";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    errors += " " + fmt("%.3e", rows[r].error);
    const double rel = std::abs(rows[r].error - reference[r]) / reference[r];
    out.require(rel <= 0.2, "N=" + std::to_string(ns[r]) + " off by " + fmt("%.0f%%", 100 * rel));
    if (rows[r].order) {
      errors += fmt(" (%.2f)", *rows[r].order);
      out.require(*rows[r].order >= 0.9 && *rows[r].order <= 1.1,
                  "order " + fmt("%.3f", *rows[r].order) + " at N=" + std::to_string(ns[r]));
    }
  }
  out.note(errors);
  const SceneConfig big = scenes::cone(512);
  const ScalarField g = sample_obstacle(big.obstacle, big.grid);
  const SolveReport report = solve_upper(g, big.viewpoints.front(), big.obstacle(big.viewpoints.front().x));
  out.require(report.wall_time < 1.0, "N=512 sweep took " + fmt("%.3f s", report.wall_time));
  out.note("N=512 sweep " + fmt("%.3f s", report.wall_time));
  return out;
}

Outcome closed_form_1d() {
  Outcome out;
  for (const int n : {41, 81, 161, 321}) {
    const SceneConfig scene = scenes::abs_1d(n);
    const ScalarField g = sample_obstacle(scene.obstacle, scene.grid);
    const double h = scene.grid.spacing()[0];
    SolverConfig cfg;
    cfg.viewpoint = scene.viewpoints.front();
    const ScalarField u = solve(g, cfg).solution;
    cfg.envelope = Envelope::lower;
    const ScalarField w = solve(g, cfg).solution;
    double eu = 0.0, ew = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = scene.grid.node_coord(Index{i})[0];
      eu = std::max(eu, std::abs(u.at(Index{i}) - (x < -2.0 ? -x - 1.0 : (x <= 0.0 ? 1.0 : x + 1.0))));
      ew = std::max(ew, std::abs(w.at(Index{i}) - (x < -1.0 ? -x - 1.0 : (x <= 0.0 ? 0.0 : x + 1.0))));
    }
    out.require(eu <= 2.0 * h, "upper error " + fmt("%.2e", eu) + " at N=" + std::to_string(n));
    out.require(ew <= 2.0 * h, "lower error " + fmt("%.2e", ew) + " at N=" + std::to_string(n));
    if (n == 321) out.note("N=321 upper " + fmt("%.1e", eu) + ", lower " + fmt("%.1e", ew));
  }
  return out;
}

struct RandomScene {
  ScalarField g;
  Viewpoint vp;
};

RandomScene random_scene(std::mt19937& rng, int dim) {
  const Grid grid = testing::random_grid(rng, dim, dim == 2 ? 20 : 10, dim == 2 ? 90 : 30);
  RandomScene s{sample_obstacle(testing::random_spec(rng, dim, 4), grid), {}};
  for (int k = 0; k < dim; ++k)
    s.vp.x[k] = std::uniform_real_distribution<double>(grid.lo()[k], grid.hi()[k])(rng);
  return s;
}

Outcome fixpoint_residual() {
  Outcome out;
  std::mt19937 rng(20240611);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const RandomScene s = random_scene(rng, 2 + trial % 2);
    const SolveReport report = solve_upper(s.g, s.vp);
    const double scaled = report.max_abs_residual / (1.0 + s.g.max_abs());
    worst = std::max(worst, scaled);
    out.require(scaled <= 1e-12, "scene " + std::to_string(trial) + " residual " + fmt("%.2e", scaled));
    out.require(report.sweep_node_count == s.g.size(), "scene " + std::to_string(trial) + " visit count");
  }
  out.note("worst scaled residual " + fmt("%.1e", worst));
  return out;
}

Outcome invariants() {
  Outcome out;
  std::mt19937 rng(77);
  std::size_t checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const RandomScene s = random_scene(rng, 2 + trial % 2);
    const SolveReport report = solve_upper(s.g, s.vp);
    const ScalarField& u = report.solution;
    const double g_star = report.viewpoint_value;
    const std::string tag = "scene " + std::to_string(trial) + ": ";
    bool above = true, bounded = true, monotone = true, idempotent = true, nested = true;
    for (std::size_t f = 0; f < u.size(); ++f) {
      above = above && u[f] >= s.g[f];
      bounded = bounded && g_star <= u[f] && u[f] <= s.g.max_abs();
    }
    ScalarField lower = s.g;
    for (double& v : lower.values()) v -= std::uniform_real_distribution<double>(0.0, 0.5)(rng);
    const ScalarField u_low = solve_upper(lower, s.vp).solution;
    for (std::size_t f = 0; f < u.size(); ++f) monotone = monotone && u_low[f] <= u[f];
    const ScalarField again = solve_upper(u, s.vp, g_star).solution;
    for (std::size_t f = 0; f < u.size(); ++f) idempotent = idempotent && again[f] == u[f];
    const double a1 = std::uniform_real_distribution<double>(u.min(), u.max())(rng);
    const double a2 = std::uniform_real_distribution<double>(a1, u.max())(rng);
    const Mask m1 = is_visible(u, a1), m2 = is_visible(u, a2);
    for (std::size_t f = 0; f < u.size(); ++f) nested = nested && (!m1.values[f] || m2.values[f]);
    out.require(above, tag + "u < g");
    out.require(bounded, tag + "stability bound");
    out.require(monotone, tag + "comparison");
    out.require(idempotent, tag + "idempotence");
    out.require(nested, tag + "sublevel nesting");
    checked += u.size();
  }
  out.note(std::to_string(checked) + " nodes over 20 scenes");
  return out;
}

Outcome oracle_equivalence() {
  Outcome out;
  struct Case {
    std::string name;
    SceneConfig scene;
    std::vector<int> ns;
  };
  SceneConfig ball_box = scenes::cone(9);
  ball_box.obstacle = ObstacleSpec::max({ObstacleSpec::ball(2, {0.6, 0.4}, 0.35),
                                         ObstacleSpec::box(2, {-0.5, 0.7}, {0.3, 0.15})});
  ball_box.viewpoints = {Viewpoint{{-1.3, -1.1}}};
  SceneConfig wall = scenes::wall(9);
  wall.viewpoints.resize(1);
  const std::vector<Case> cases = {
      {"cone", scenes::cone(9), {64, 128, 256}},
      {"four_obstacles", scenes::four_obstacles(9), {64, 128, 256}},
      {"ball_box", ball_box, {64, 128, 256}},
      {"wall", wall, {64, 128, 256}},
      {"two_buildings", scenes::two_buildings(9), {16, 32, 64}},
  };
  for (const Case& c : cases) {
    const auto rows = run_convergence(c.scene, c.ns);
    std::string line = c.name + " C=";
    std::vector<double> constants;
    for (const ConvergenceRow& r : rows) {
      constants.push_back(r.error / r.h);
      line += fmt(" %.3f", constants.back());
    }
    bool stable = true;
    for (std::size_t i = 1; i < constants.size(); ++i)
      stable = stable && std::abs(constants[i] / constants[i - 1] - 1.0) <= 0.3;
    line += fmt(" (last order %.2f)", rows.back().order.value_or(0.0));
    out.note(line);
    out.require(stable, c.name + " C not stable within 30%");
  }
  return out;
}

Outcome multiview_identities() {
  Outcome out;
  const SceneConfig scene = scenes::four_obstacles(257);
  const ScalarField g = sample_obstacle(scene.obstacle, scene.grid);
  std::vector<ScalarField> each;
  for (const Viewpoint& vp : scene.viewpoints) each.push_back(solve_upper(g, vp).solution);
  const ScalarField any = solve_any(g, scene.viewpoints);
  const ScalarField all = solve_all(g, scene.viewpoints);
  bool min_ok = true, max_ok = true;
  for (std::size_t f = 0; f < g.size(); ++f) {
    double lo = each[0][f], hi = each[0][f];
    for (const ScalarField& u : each) {
      lo = std::min(lo, u[f]);
      hi = std::max(hi, u[f]);
    }
    min_ok = min_ok && any[f] == lo;
    max_ok = max_ok && all[f] == hi;
  }
  out.require(min_ok, "u_any differs from nodewise min");
  out.require(max_ok, "u_all differs from nodewise max");

  const SceneConfig walled = scenes::wall(129);
  const ScalarField gw = sample_obstacle(walled.obstacle, walled.grid);
  const std::size_t parts = count_components(is_visible(solve_all(gw, walled.viewpoints), walled.alpha));
  const std::size_t any_parts = count_components(is_visible(solve_any(gw, walled.viewpoints), walled.alpha));
  out.require(parts >= 2, "visible-all has " + std::to_string(parts) + " component(s)");
  out.note("wall: visible-all " + std::to_string(parts) + " components, visible-any " + std::to_string(any_parts));
  return out;
}

Outcome smoke_3d() {
  Outcome out;
  const SceneConfig scene = scenes::two_buildings(64);
  const ScalarField g = sample_obstacle(scene.obstacle, scene.grid);
  const auto start = std::chrono::steady_clock::now();
  const SolveReport report = solve_upper(g, scene.viewpoints.front(), scene.obstacle(scene.viewpoints.front().x));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(seconds < 5.0, "solve took " + fmt("%.2f s", seconds));
  out.require(report.max_abs_residual <= 1e-12 * (1.0 + g.max_abs()),
              "residual " + fmt("%.2e", report.max_abs_residual));

  const auto path = std::filesystem::temp_directory_path() / "starvis_acceptance_u.vtk";
  export_field(report.solution, path, FieldFormat::vtk_ascii, "u");
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  std::filesystem::remove(path);
  const bool header = lines.size() == 10 + g.size() && lines[0] == "# vtk DataFile Version 3.0" &&
                      lines[2] == "ASCII" && lines[3] == "DATASET STRUCTURED_POINTS" &&
                      lines[4] == "DIMENSIONS 64 64 64" && lines[7] == "POINT_DATA 262144" &&
                      lines[8] == "SCALARS u double 1" && lines[9] == "LOOKUP_TABLE default";
  out.require(header, "VTK structure");
  out.note(fmt("solve %.3f s", seconds) + ", residual " + fmt("%.1e", report.max_abs_residual) + ", " +
           std::to_string(lines.size()) + " VTK lines");
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"table1_cone_convergence", table_one},
      {"closed_form_1d", closed_form_1d},
      {"exact_fixpoint_residual", fixpoint_residual},
      {"invariant_suite", invariants},
      {"oracle_equivalence_5_scenes", oracle_equivalence},
      {"multiview_identities", multiview_identities},
      {"smoke_3d_two_buildings", smoke_3d},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
