#include "starvis/ray_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parallel.hpp"

namespace starvis {

namespace {

void check_step(double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("oracle_step", "sampling step must be positive");
}

}  // namespace

double upper_envelope_at(const ObstacleSpec& spec, const Viewpoint& vp, const Vec& x, const RaySamplingConfig& cfg) {
  check_step(cfg.step);
  Vec dir{};
  for (int k = 0; k < kMaxDim; ++k) dir[k] = x[k] - vp.x[k];
  const double length = norm(dir, kMaxDim);
  double best = spec(vp.x);
  if (length == 0.0) return best;
  const double dt = cfg.step / length;
  for (std::size_t j = 1;; ++j) {
    const double t = static_cast<double>(j) * dt;
    if (t >= 1.0) break;
    Vec y{};
    for (int k = 0; k < kMaxDim; ++k) y[k] = vp.x[k] + t * dir[k];
    best = std::max(best, spec(y));
  }
  return std::max(best, spec(x));
}

double box_minimum(const ObstacleSpec& spec, const Grid& box, double step) {
  check_step(step);
  Index n{};
  for (int k = 0; k < box.dim(); ++k)
    n[k] = std::max(2, static_cast<int>(std::ceil((box.hi()[k] - box.lo()[k]) / step)) + 1);
  const Grid scan(box.dim(), box.lo(), box.hi(), n);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < scan.size(); ++f) best = std::min(best, spec(scan.node_coord(f)));
  return best;
}

double lower_envelope_at(const ObstacleSpec& spec, const Viewpoint& vp, const Vec& x, const Grid& box,
                         const RaySamplingConfig& cfg) {
  check_step(cfg.step);
  const int dim = box.dim();
  Vec dir{};
  for (int k = 0; k < dim; ++k) dir[k] = x[k] - vp.x[k];
  const double length = norm(dir, dim);
  if (length == 0.0) return box_minimum(spec, box, cfg.step);

  // Largest t with x + t*dir still inside the box.
  double t_exit = std::numeric_limits<double>::infinity();
  for (int k = 0; k < dim; ++k) {
    if (dir[k] > 0.0) t_exit = std::min(t_exit, (box.hi()[k] - x[k]) / dir[k]);
    if (dir[k] < 0.0) t_exit = std::min(t_exit, (box.lo()[k] - x[k]) / dir[k]);
  }
  t_exit = std::max(t_exit, 0.0);

  double best = spec(x);
  const double dt = cfg.step / length;
  auto point_at = [&](double t) {
    Vec y{};
    for (int k = 0; k < dim; ++k) y[k] = std::clamp(x[k] + t * dir[k], box.lo()[k], box.hi()[k]);
    return y;
  };
  for (std::size_t j = 1;; ++j) {
    const double t = static_cast<double>(j) * dt;
    if (t >= t_exit) break;
    best = std::min(best, spec(point_at(t)));
  }
  return std::min(best, spec(point_at(t_exit)));
}

ScalarField oracle_field(const ObstacleSpec& spec, const Viewpoint& vp, const Grid& grid, const RaySamplingConfig& cfg,
                         Envelope which) {
  check_step(cfg.step);
  check_viewpoint(grid, vp);
  if (cfg.step > grid.min_spacing() * (1.0 + 1e-12))
    throw ConfigError("oracle_step", "sampling step must not exceed the grid spacing");
  ScalarField field(grid);
  detail::parallel_for(grid.size(), [&](std::size_t f) {
    const Vec x = grid.node_coord(f);
    field[f] = which == Envelope::upper ? upper_envelope_at(spec, vp, x, cfg) : lower_envelope_at(spec, vp, x, grid, cfg);
  });
  return field;
}

}  // namespace starvis
