#include "starvis/obstacle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace starvis {

struct ObstacleSpec::Node {
  Kind kind = Kind::constant;
  int dim = 0;
  Vec center{};
  Vec vec{};
  double scalar = 0.0;
  double slope = 1.0;
  std::string name;
  PointCloud cloud;
  std::shared_ptr<const NearestPoint> nearest;
  Function fn;
  std::vector<ObstacleSpec> children;
};

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) throw ConfigError("obstacle", "primitive dimension must be 1, 2 or 3");
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ConfigError("obstacle", std::string(what) + " must be finite");
}

}  // namespace

ObstacleSpec ObstacleSpec::constant(double c) {
  check_finite(c, "constant");
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->scalar = c;
  return ObstacleSpec(std::move(n));
}

ObstacleSpec ObstacleSpec::cone(int dim, const Vec& apex, double height, double slope) {
  check_dim(dim);
  check_finite(height, "cone height");
  check_finite(slope, "cone slope");
  auto n = std::make_shared<Node>();
  n->kind = Kind::cone;
  n->dim = dim;
  n->center = apex;
  n->scalar = height;
  n->slope = slope;
  return ObstacleSpec(std::move(n));
}

ObstacleSpec ObstacleSpec::ball(int dim, const Vec& center, double radius) {
  check_dim(dim);
  check_finite(radius, "ball radius");
  if (radius < 0.0) throw ConfigError("obstacle", "ball radius must be non-negative");
  auto n = std::make_shared<Node>();
  n->kind = Kind::ball;
  n->dim = dim;
  n->center = center;
  n->scalar = radius;
  return ObstacleSpec(std::move(n));
}

ObstacleSpec ObstacleSpec::box(int dim, const Vec& center, const Vec& half) {
  check_dim(dim);
  bool bounded = false;
  for (int k = 0; k < dim; ++k) {
    if (std::isnan(half[k]) || half[k] < 0.0) throw ConfigError("obstacle", "box half widths must be non-negative");
    if (std::isfinite(half[k])) bounded = true;
  }
  if (!bounded) throw ConfigError("obstacle", "box needs at least one finite half width");
  auto n = std::make_shared<Node>();
  n->kind = Kind::box;
  n->dim = dim;
  n->center = center;
  n->vec = half;
  return ObstacleSpec(std::move(n));
}

ObstacleSpec ObstacleSpec::halfspace(int dim, const Vec& normal, double offset) {
  check_dim(dim);
  check_finite(offset, "halfspace offset");
  auto n = std::make_shared<Node>();
  n->kind = Kind::halfspace;
  n->dim = dim;
  n->vec = normal;
  n->scalar = offset;
  return ObstacleSpec(std::move(n));
}

ObstacleSpec ObstacleSpec::point_cloud(PointCloud cloud, std::string source) {
  check_dim(cloud.dim);
  if (!(cloud.radius > 0.0) || !std::isfinite(cloud.radius))
    throw ConfigError("obstacle", "point cloud radius must be positive");
  auto n = std::make_shared<Node>();
  n->kind = Kind::point_cloud;
  n->dim = cloud.dim;
  n->scalar = cloud.radius;
  n->name = std::move(source);
  n->nearest = std::make_shared<const NearestPoint>(cloud);
  n->cloud = std::move(cloud);
  return ObstacleSpec(std::move(n));
}

ObstacleSpec ObstacleSpec::analytic(std::string name, Function fn) {
  if (!fn) throw ConfigError("obstacle", "analytic obstacle needs a callable");
  auto n = std::make_shared<Node>();
  n->kind = Kind::analytic;
  n->name = std::move(name);
  n->fn = std::move(fn);
  return ObstacleSpec(std::move(n));
}

ObstacleSpec ObstacleSpec::negate(ObstacleSpec child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::negate;
  n->children.push_back(std::move(child));
  return ObstacleSpec(std::move(n));
}

ObstacleSpec ObstacleSpec::min(std::vector<ObstacleSpec> children) {
  if (children.empty()) throw ConfigError("obstacle", "min needs at least one child");
  auto n = std::make_shared<Node>();
  n->kind = Kind::min;
  n->children = std::move(children);
  return ObstacleSpec(std::move(n));
}

ObstacleSpec ObstacleSpec::max(std::vector<ObstacleSpec> children) {
  if (children.empty()) throw ConfigError("obstacle", "max needs at least one child");
  auto n = std::make_shared<Node>();
  n->kind = Kind::max;
  n->children = std::move(children);
  return ObstacleSpec(std::move(n));
}

ObstacleSpec ObstacleSpec::scale(double factor, ObstacleSpec child) {
  check_finite(factor, "scale factor");
  auto n = std::make_shared<Node>();
  n->kind = Kind::scale;
  n->scalar = factor;
  n->children.push_back(std::move(child));
  return ObstacleSpec(std::move(n));
}

ObstacleSpec ObstacleSpec::offset(double amount, ObstacleSpec child) {
  check_finite(amount, "offset");
  auto n = std::make_shared<Node>();
  n->kind = Kind::offset;
  n->scalar = amount;
  n->children.push_back(std::move(child));
  return ObstacleSpec(std::move(n));
}

double ObstacleSpec::operator()(const Vec& p) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::constant:
      return n.scalar;
    case Kind::cone:
      return n.scalar - n.slope * distance(p, n.center, n.dim);
    case Kind::ball:
      return n.scalar - distance(p, n.center, n.dim);
    case Kind::box: {
      double g = std::numeric_limits<double>::infinity();
      for (int k = 0; k < n.dim; ++k)
        if (std::isfinite(n.vec[k])) g = std::min(g, n.vec[k] - std::abs(p[k] - n.center[k]));
      return g;
    }
    case Kind::halfspace: {
      double dot = 0.0;
      for (int k = 0; k < n.dim; ++k) dot += n.vec[k] * p[k];
      return n.scalar - dot;
    }
    case Kind::point_cloud:
      return n.scalar - n.nearest->distance(p);
    case Kind::analytic:
      return n.fn(p);
    case Kind::negate:
      return -n.children.front()(p);
    case Kind::min: {
      double g = n.children.front()(p);
      for (std::size_t c = 1; c < n.children.size(); ++c) g = std::min(g, n.children[c](p));
      return g;
    }
    case Kind::max: {
      double g = n.children.front()(p);
      for (std::size_t c = 1; c < n.children.size(); ++c) g = std::max(g, n.children[c](p));
      return g;
    }
    case Kind::scale:
      return n.scalar * n.children.front()(p);
    case Kind::offset:
      return n.children.front()(p) + n.scalar;
  }
  return 0.0;
}

ObstacleSpec::Kind ObstacleSpec::kind() const { return node_->kind; }
int ObstacleSpec::dim() const { return node_->dim; }
const Vec& ObstacleSpec::center() const { return node_->center; }
const Vec& ObstacleSpec::vector_param() const { return node_->vec; }
double ObstacleSpec::scalar_param() const { return node_->scalar; }
double ObstacleSpec::slope() const { return node_->slope; }
const std::string& ObstacleSpec::name() const { return node_->name; }
const PointCloud& ObstacleSpec::cloud() const { return node_->cloud; }
const std::vector<ObstacleSpec>& ObstacleSpec::children() const { return node_->children; }

double eval_obstacle(const ObstacleSpec& spec, const Vec& p) { return spec(p); }

ScalarField sample_obstacle(const ObstacleSpec& spec, const Grid& grid) {
  ScalarField field(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const double v = spec(grid.node_coord(f));
    if (!std::isfinite(v)) throw DomainError("obstacle evaluates to a non-finite value inside the box");
    field[f] = v;
  }
  return field;
}

namespace {

struct Registry {
  std::mutex mutex;
  std::map<std::string, ObstacleSpec::Function> functions;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

void register_analytic(const std::string& name, ObstacleSpec::Function fn) {
  Registry& r = registry();
  std::lock_guard lock(r.mutex);
  r.functions[name] = std::move(fn);
}

ObstacleSpec::Function find_analytic(const std::string& name) {
  Registry& r = registry();
  std::lock_guard lock(r.mutex);
  const auto it = r.functions.find(name);
  if (it == r.functions.end()) throw ConfigError("obstacle.analytic", "unknown analytic function '" + name + "'");
  return it->second;
}

}  // namespace starvis
