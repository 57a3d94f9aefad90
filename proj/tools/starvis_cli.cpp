// starvis command-line front end.
//
//   starvis solve <scene.json> [--alpha a] [--out dir] [--format text|vtk-ascii]
//   starvis converge <scene.json> --N 32,64,128 [--oracle-step s] [--out dir]
//   starvis oracle <scene.json> [--oracle-step s] [--out dir] [--format ...]
//   starvis multiview <scene.json> [--alpha a] [--out dir] [--format ...]
//
// Exit codes: 0 success, 1 usage, 2 scene parse error, 3 invalid scene,
// 4 I/O failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "starvis/convergence.hpp"
#include "starvis/field_io.hpp"
#include "starvis/multiview.hpp"
#include "starvis/ray_oracle.hpp"
#include "starvis/scene_config.hpp"
#include "starvis/sweep_solver.hpp"

namespace fs = std::filesystem;
using namespace starvis;

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kParse = 2, kInvalid = 3, kIo = 4 };

struct Options {
  std::string scene;
  std::optional<double> alpha;
  std::string out = ".";
  std::string format = "text";
  std::optional<double> oracle_step;
  std::vector<int> ns;
};

struct Run {
  SceneConfig scene;
  FieldFormat format;
  fs::path out;
  double alpha;
};

Run prepare(const Options& opt) {
  Run run{load_scene(opt.scene), parse_field_format(opt.format), fs::path(opt.out), 0.0};
  run.alpha = opt.alpha.value_or(run.scene.alpha);
  if (opt.oracle_step) {
    if (!(*opt.oracle_step > 0.0)) throw ConfigError("oracle-step", "must be positive");
    run.scene.oracle_step = opt.oracle_step;
  }
  std::error_code ec;
  fs::create_directories(run.out, ec);
  if (ec) throw IoError("cannot create output directory " + run.out.string());
  return run;
}

void write(const Run& run, const ScalarField& field, const std::string& stem) {
  const fs::path path = run.out / (stem + std::string(extension(run.format)));
  export_field(field, path, run.format, stem);
  std::printf("wrote %s\n", path.string().c_str());
}

std::vector<double> viewpoint_values(const SceneConfig& scene) {
  std::vector<double> values;
  for (const Viewpoint& vp : scene.viewpoints) values.push_back(scene.obstacle(vp.x));
  return values;
}

struct Solved {
  std::vector<ScalarField> fields;
  double residual = 0.0;
  double seconds = 0.0;
};

Solved solve_all_views(const SceneConfig& scene, const ScalarField& g) {
  Solved out;
  for (const Viewpoint& vp : scene.viewpoints) {
    SolverConfig cfg;
    cfg.envelope = scene.envelope;
    cfg.viewpoint = vp;
    cfg.viewpoint_value = scene.obstacle(vp.x);
    SolveReport report = solve(g, cfg);
    out.residual = std::max(out.residual, report.max_abs_residual);
    out.seconds += report.wall_time;
    out.fields.push_back(std::move(report.solution));
  }
  return out;
}

int cmd_solve(const Options& opt) {
  const Run run = prepare(opt);
  const ScalarField g = sample_obstacle(run.scene.obstacle, run.scene.grid);
  const Solved solved = solve_all_views(run.scene, g);
  const ScalarField u = solved.fields.size() == 1 ? solved.fields.front()
                                                  : compose(solved.fields, run.scene.composition());
  const Mask visible = is_visible(u, run.alpha);
  write(run, g, "obstacle");
  write(run, u, "solution");
  write(run, mask_to_field(visible), "visible");
  std::printf("nodes %zu  viewpoints %zu  max|residual| %.3e  sweep %.3fs  visible %zu (alpha %g)\n",
              run.scene.grid.size(), run.scene.viewpoints.size(), solved.residual, solved.seconds, visible.count(),
              run.alpha);
  return kOk;
}

int cmd_converge(const Options& opt) {
  const Run run = prepare(opt);
  if (opt.ns.empty()) throw ConfigError("N", "give at least one resolution with --N");
  const auto rows = run_convergence(run.scene, opt.ns, run.scene.oracle_step);
  const std::string table = format_convergence(rows);
  std::fputs(table.c_str(), stdout);
  const fs::path path = run.out / "convergence.csv";
  std::ofstream csv(path);
  if (!csv) throw IoError("cannot write " + path.string());
  csv << "N,h,error,order\n";
  for (const ConvergenceRow& r : rows)
    csv << r.n << ',' << format_real(r.h) << ',' << format_real(r.error) << ','
        << (r.order ? format_real(*r.order) : "") << '\n';
  if (!csv) throw IoError("failed writing " + path.string());
  std::printf("wrote %s\n", path.string().c_str());
  return kOk;
}

int cmd_oracle(const Options& opt) {
  const Run run = prepare(opt);
  const double step = run.scene.oracle_step.value_or(run.scene.grid.min_spacing() / 8.0);
  std::vector<ScalarField> fields;
  for (std::size_t v = 0; v < run.scene.viewpoints.size(); ++v) {
    fields.push_back(oracle_field(run.scene.obstacle, run.scene.viewpoints[v], run.scene.grid,
                                  RaySamplingConfig{step}, run.scene.envelope));
    if (run.scene.viewpoints.size() > 1) write(run, fields.back(), "oracle_" + std::to_string(v));
  }
  const ScalarField combined = fields.size() == 1 ? fields.front() : compose(fields, run.scene.composition());
  write(run, combined, "oracle");
  std::printf("oracle step %.3e\n", step);
  return kOk;
}

int cmd_multiview(const Options& opt) {
  const Run run = prepare(opt);
  if (run.scene.envelope != Envelope::upper)
    throw ConfigError("envelope", "multiview composes upper envelopes only");
  const ScalarField g = sample_obstacle(run.scene.obstacle, run.scene.grid);
  const std::vector<double> values = viewpoint_values(run.scene);
  const std::vector<ScalarField> each = solve_each(g, run.scene.viewpoints, values);
  for (std::size_t v = 0; v < each.size(); ++v) write(run, each[v], "solution_" + std::to_string(v));

  const ComposeExpr any_expr = [&] {
    std::vector<ComposeExpr> leaves;
    for (std::size_t v = 0; v < each.size(); ++v) leaves.push_back(ComposeExpr::leaf(v));
    return ComposeExpr::min(std::move(leaves));
  }();
  const ScalarField any = compose(each, any_expr);
  const ScalarField all = compose(each, ComposeExpr::max(any_expr.children()));
  const ScalarField chosen = compose(each, run.scene.composition());
  write(run, any, "any");
  write(run, all, "all");
  write(run, chosen, "composite");
  const Mask visible = is_visible(chosen, run.alpha);
  write(run, mask_to_field(visible), "visible");
  std::printf("visible any %zu (%zu components)  all %zu (%zu components)  composite %zu (%zu components)\n",
              is_visible(any, run.alpha).count(), count_components(is_visible(any, run.alpha)),
              is_visible(all, run.alpha).count(), count_components(is_visible(all, run.alpha)), visible.count(),
              count_components(visible));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Visibility sets as sublevel sets of star-shaped envelopes"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("config", opt.scene, "Scene file (JSON)")->required();
    sub->add_option("--out", opt.out, "Output directory");
    sub->add_option("--format", opt.format, "Field format")->check(CLI::IsMember({"text", "vtk-ascii"}));
    sub->add_option("--oracle-step", opt.oracle_step, "Ray sampling step for the oracle");
  };
  auto* solve_cmd = app.add_subcommand("solve", "Solve the scene and write g, u and the visibility mask");
  common(solve_cmd);
  solve_cmd->add_option("--alpha", opt.alpha, "Visibility level");
  auto* converge_cmd = app.add_subcommand("converge", "Error against the ray oracle over a list of resolutions");
  common(converge_cmd);
  converge_cmd->add_option("--N", opt.ns, "Node counts per axis")->delimiter(',')->required();
  auto* oracle_cmd = app.add_subcommand("oracle", "Ray-traced envelope at every node");
  common(oracle_cmd);
  auto* multiview_cmd = app.add_subcommand("multiview", "Per-viewpoint solves and their compositions");
  common(multiview_cmd);
  multiview_cmd->add_option("--alpha", opt.alpha, "Visibility level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(opt);
    if (*converge_cmd) return cmd_converge(opt);
    if (*oracle_cmd) return cmd_oracle(opt);
    if (*multiview_cmd) return cmd_multiview(opt);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kParse;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "invalid scene: %s\n", e.what());
    return kInvalid;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kIo;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInvalid;
  }
  return kUsage;
}
