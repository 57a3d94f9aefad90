#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "starvis/scene_config.hpp"

namespace starvis {

struct ConvergenceRow {
  int n = 0;
  double h = 0.0;
  double error = 0.0;            // max-norm difference to the ray oracle
  std::optional<double> order;  // log(e_prev / e) / log(h_prev / h)
};

/// Solves the scene's first viewpoint at each resolution and measures the
/// max-norm error against the ray oracle.
///
/// Each entry of `ns` replaces the node count on every axis. The oracle
/// samples rays at `oracle_step`, defaulting to the scene's oracle_step or,
/// failing that, one eighth of the finest grid spacing.
std::vector<ConvergenceRow> run_convergence(const SceneConfig& scene, std::span<const int> ns,
                                            std::optional<double> oracle_step = std::nullopt);

std::string format_convergence(std::span<const ConvergenceRow> rows);

}  // namespace starvis
