#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "starvis/grid.hpp"
#include "starvis/multiview.hpp"
#include "starvis/obstacle.hpp"
#include "starvis/ray_oracle.hpp"

namespace starvis {

enum class Semantics { any, all, custom };

/// Everything needed to run one scene.
///
/// Scene files are JSON objects with explicit keys:
///
///   {
///     "grid": {"lo": [-2, -2], "hi": [2, 2], "n": [128, 128]},
///     "obstacle": {"cone": {"apex": [0, 0]}},
///     "viewpoints": [[-1, -1]],
///     "semantics": "any",            // or "all", or a min/max expression
///     "alpha": 0.0,
///     "envelope": "upper",           // or "lower"
///     "oracle_step": 0.001           // optional
///   }
///
/// Obstacle nodes are single-key objects: constant, cone, ball, box,
/// halfspace, point_cloud, analytic, negate, min, max, scale, offset.
/// Custom semantics use {"view": i}, {"min": [...]}, {"max": [...]} and
/// {"at_least": {"k": k, "of": [...]}}.
struct SceneConfig {
  Grid grid = Grid::cube(2, -1.0, 1.0, 2);
  ObstacleSpec obstacle = ObstacleSpec::constant(0.0);
  ViewpointSet viewpoints;
  Semantics semantics = Semantics::any;
  std::optional<ComposeExpr> expression;  // set when semantics == custom
  double alpha = 0.0;
  Envelope envelope = Envelope::upper;
  std::optional<double> oracle_step;

  /// The min/max expression the semantics stand for, over all viewpoints.
  ComposeExpr composition() const;
};

/// Parses scene JSON. Relative point-cloud paths resolve against `base_dir`.
/// Syntax errors throw ParseError; bad values throw ConfigError naming the key.
SceneConfig parse_scene(std::string_view text, const std::filesystem::path& base_dir = {});
SceneConfig load_scene(const std::filesystem::path& path);

/// Canonical JSON form; parse_scene(serialize_scene(c)) reproduces it.
std::string serialize_scene(const SceneConfig& config);

/// Default inflation radius for point clouds: twice the largest grid spacing.
double default_cloud_radius(const Grid& grid);

}  // namespace starvis
