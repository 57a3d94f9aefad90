#include "starvis/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "starvis/ray_oracle.hpp"
#include "starvis/sweep_solver.hpp"

namespace starvis {

std::vector<ConvergenceRow> run_convergence(const SceneConfig& scene, std::span<const int> ns,
                                            std::optional<double> oracle_step) {
  if (ns.empty()) throw ConfigError("N", "need at least one resolution");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 8) throw ConfigError("N", "every resolution must be at least 8");
    if (i > 0 && ns[i] <= ns[i - 1]) throw ConfigError("N", "resolutions must be strictly increasing");
  }
  if (scene.viewpoints.empty()) throw ConfigError("viewpoints", "scene has no viewpoint");

  const int dim = scene.grid.dim();
  auto grid_for = [&](int n) {
    Index count{};
    for (int k = 0; k < dim; ++k) count[k] = n;
    return Grid(dim, scene.grid.lo(), scene.grid.hi(), count);
  };
  const double step = oracle_step ? *oracle_step
                      : scene.oracle_step ? *scene.oracle_step
                                          : grid_for(ns.back()).min_spacing() / 8.0;

  const Viewpoint vp = scene.viewpoints.front();
  std::vector<ConvergenceRow> rows;
  for (const int n : ns) {
    const Grid grid = grid_for(n);
    SolverConfig cfg;
    cfg.envelope = scene.envelope;
    cfg.viewpoint = vp;
    cfg.viewpoint_value = scene.obstacle(vp.x);
    const SolveReport report = solve(sample_obstacle(scene.obstacle, grid), cfg);
    const ScalarField exact = oracle_field(scene.obstacle, vp, grid, RaySamplingConfig{step}, scene.envelope);
    double error = 0.0;
    for (std::size_t f = 0; f < grid.size(); ++f) error = std::max(error, std::abs(report.solution[f] - exact[f]));

    ConvergenceRow row{n, grid.max_spacing(), error, std::nullopt};
    if (!rows.empty() && rows.back().error > 0.0 && error > 0.0)
      row.order = std::log(rows.back().error / error) / std::log(rows.back().h / row.h);
    rows.push_back(row);
  }
  return rows;
}

std::string format_convergence(std::span<const ConvergenceRow> rows) {
  const bool with_order = rows.size() > 1;
  std::string out = with_order ? "N          h          error      order\n" : "N          h          error\n";
  char line[128];
  for (const ConvergenceRow& r : rows) {
    if (r.order)
      std::snprintf(line, sizeof line, "%-10d %-10.2e %-10.2e %.2f\n", r.n, r.h, r.error, *r.order);
    else if (with_order)
      std::snprintf(line, sizeof line, "%-10d %-10.2e %-10.2e -\n", r.n, r.h, r.error);
    else
      std::snprintf(line, sizeof line, "%-10d %-10.2e %.2e\n", r.n, r.h, r.error);
    out += line;
  }
  return out;
}

}  // namespace starvis
