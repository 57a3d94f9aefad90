#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "starvis/grid.hpp"
#include "starvis/point_cloud.hpp"

namespace starvis {

/// Declarative obstacle function g, positive inside obstacle material and
/// negative outside.
///
/// A spec is an immutable tree of primitives and pointwise combinators.
/// Copies share structure. Primitive parameters use the first `dim`
/// coordinates of the query point, so a spec built for a 2D scene ignores a
/// third coordinate.
class ObstacleSpec {
 public:
  enum class Kind { constant, cone, ball, box, halfspace, point_cloud, analytic, negate, min, max, scale, offset };

  using Function = std::function<double(const Vec&)>;

  /// g = c.
  static ObstacleSpec constant(double c);
  /// g = height - slope * |p - apex|.
  static ObstacleSpec cone(int dim, const Vec& apex, double height = 0.0, double slope = 1.0);
  /// g = radius - |p - center|.
  static ObstacleSpec ball(int dim, const Vec& center, double radius);
  /// g = min_k (half[k] - |p_k - center_k|); an infinite half width drops that axis.
  static ObstacleSpec box(int dim, const Vec& center, const Vec& half);
  /// g = offset - normal . p
  static ObstacleSpec halfspace(int dim, const Vec& normal, double offset);
  /// g = r - dist(p, cloud), exact nearest point.
  static ObstacleSpec point_cloud(PointCloud cloud, std::string source = {});
  /// Arbitrary callback; `name` identifies it in scene files.
  static ObstacleSpec analytic(std::string name, Function fn);

  static ObstacleSpec negate(ObstacleSpec child);
  static ObstacleSpec min(std::vector<ObstacleSpec> children);
  static ObstacleSpec max(std::vector<ObstacleSpec> children);
  static ObstacleSpec scale(double factor, ObstacleSpec child);
  static ObstacleSpec offset(double amount, ObstacleSpec child);

  double operator()(const Vec& p) const;

  Kind kind() const;
  int dim() const;  // 0 for dimension-free specs (constant, analytic)
  const Vec& center() const;
  const Vec& vector_param() const;  // box half widths, halfspace normal
  double scalar_param() const;      // radius, height, offset, factor, constant
  double slope() const;
  const std::string& name() const;  // analytic name or point-cloud source path
  const PointCloud& cloud() const;
  const std::vector<ObstacleSpec>& children() const;

 private:
  struct Node;
  explicit ObstacleSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

double eval_obstacle(const ObstacleSpec& spec, const Vec& p);

/// Evaluates the spec at every grid node.
ScalarField sample_obstacle(const ObstacleSpec& spec, const Grid& grid);

/// Named callbacks usable as `analytic` obstacles from scene files.
void register_analytic(const std::string& name, ObstacleSpec::Function fn);
ObstacleSpec::Function find_analytic(const std::string& name);

}  // namespace starvis
