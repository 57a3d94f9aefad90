#include "starvis/sweep_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace starvis {

namespace {

// Fractions this close to 0 or 1 are snapped so that no stencil node carries
// a round-off-sized weight.
constexpr double kSnap = 1e-12;
// |x - x~| below kDegenerate * h marks the node as sitting on x*.
constexpr double kDegenerate = 1e-14;

enum class NodeKind { interior, anchor, viewpoint, exits_box };

struct Upwind {
  NodeKind kind = NodeKind::interior;
  Index base{};
  Index step{};
  Vec frac{};
  double dist = 0.0;  // |x - x~|
};

class UpwindGeometry {
 public:
  UpwindGeometry(const Grid& grid, const Viewpoint& vp, Envelope envelope)
      : grid_(grid), c_(to_index_space(grid, vp.x)), envelope_(envelope) {}

  Upwind at(std::size_t flat) const {
    const int dim = grid_.dim();
    const Index i = grid_.unflat(flat);
    const Vec& h = grid_.spacing();

    // d points along the upwind direction: toward x* for the upper
    // envelope, away from it for the lower one.
    Vec d{};
    double m = 0.0;
    double to_vp = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double toward = c_[k] - i[k];
      d[k] = envelope_ == Envelope::upper ? toward : -toward;
      m = std::max(m, std::abs(d[k]));
      to_vp += (toward * h[k]) * (toward * h[k]);
    }
    to_vp = std::sqrt(to_vp);

    Upwind up;
    if (to_vp < kDegenerate * grid_.min_spacing()) {
      up.kind = NodeKind::viewpoint;
      return up;
    }
    if (envelope_ == Envelope::upper && m <= 1.0) {
      up.kind = NodeKind::anchor;
      up.dist = to_vp;
      return up;
    }

    double dist = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double move = d[k] / m;  // index-space foot offset, |move| <= 1
      dist += (move * h[k]) * (move * h[k]);
      up.base[k] = i[k];
      up.step[k] = d[k] > 0.0 ? 1 : -1;
      double f = std::abs(move);
      if (f >= 1.0 - kSnap) {
        up.base[k] += up.step[k];
        f = 0.0;
      } else if (f <= kSnap) {
        f = 0.0;
      }
      up.frac[k] = f;
      if (up.base[k] < 0 || up.base[k] >= grid_.n()[k] ||
          (f > 0.0 && (up.base[k] + up.step[k] < 0 || up.base[k] + up.step[k] >= grid_.n()[k]))) {
        // Only the outward ray of the lower envelope can leave the box.
        up.kind = NodeKind::exits_box;
        return up;
      }
    }
    up.dist = std::sqrt(dist);
    return up;
  }

 private:
  const Grid& grid_;
  Vec c_;
  Envelope envelope_;
};

template <class Fn>
void for_each_stencil_node(const Grid& grid, const Upwind& up, Fn&& fn) {
  const int dim = grid.dim();
  std::array<int, kMaxDim> pick{};
  while (true) {
    std::size_t flat = 0;
    for (int k = 0; k < dim; ++k) flat += grid.strides()[k] * static_cast<std::size_t>(up.base[k] + pick[k] * up.step[k]);
    fn(flat);
    int k = 0;
    while (k < dim && (up.frac[k] == 0.0 || pick[k] == 1)) {
      pick[k] = 0;
      ++k;
    }
    if (k == dim) break;
    pick[k] = 1;
  }
}

double resolve_viewpoint_value(const ScalarField& g, const SolverConfig& cfg) {
  if (cfg.viewpoint_value) {
    if (!std::isfinite(*cfg.viewpoint_value)) throw ConfigError("viewpoint_value", "must be finite");
    return *cfg.viewpoint_value;
  }
  return interp(g, cfg.viewpoint.x);
}

double node_residual(const ScalarField& u, const ScalarField& g, const Upwind& up, double vp_value, double g_min,
                     Envelope envelope, std::size_t f) {
  const double diff = u[f] - g[f];
  if (envelope == Envelope::upper) {
    switch (up.kind) {
      case NodeKind::viewpoint:
        return std::min(diff, u[f] - vp_value);
      case NodeKind::anchor:
        return std::min(diff, (u[f] - vp_value) / up.dist);
      case NodeKind::interior:
      case NodeKind::exits_box:
        return std::min(diff, (u[f] - multilinear(u.values(), u.grid(), up.base, up.step, up.frac)) / up.dist);
    }
  }
  switch (up.kind) {
    case NodeKind::viewpoint:
      return std::max(diff, u[f] - g_min);
    case NodeKind::exits_box:
      return diff;
    case NodeKind::anchor:
    case NodeKind::interior:
      return std::max(diff, (u[f] - multilinear(u.values(), u.grid(), up.base, up.step, up.frac)) / up.dist);
  }
  return diff;
}

void check_same_grid(const ScalarField& u, const ScalarField& g) {
  if (!(u.grid() == g.grid())) throw ConfigError("field", "fields live on different grids");
}

}  // namespace

std::vector<std::size_t> sweep_order(const Grid& grid, const Viewpoint& vp) {
  check_viewpoint(grid, vp);
  const Vec c = to_index_space(grid, vp.x);
  struct Key {
    double chebyshev;
    double l1;
    std::size_t flat;
  };
  std::vector<Key> keys(grid.size());
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const Index i = grid.unflat(f);
    double cheb = 0.0, l1 = 0.0;
    for (int k = 0; k < grid.dim(); ++k) {
      const double a = std::abs(i[k] - c[k]);
      cheb = std::max(cheb, a);
      l1 += a;
    }
    keys[f] = {cheb, l1, f};
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.chebyshev != b.chebyshev) return a.chebyshev < b.chebyshev;
    if (a.l1 != b.l1) return a.l1 < b.l1;
    return a.flat < b.flat;
  });
  std::vector<std::size_t> order(grid.size());
  std::transform(keys.begin(), keys.end(), order.begin(), [](const Key& k) { return k.flat; });
  return order;
}

double residual(const ScalarField& u, const ScalarField& g, const SolverConfig& cfg, std::size_t node) {
  check_same_grid(u, g);
  check_viewpoint(g.grid(), cfg.viewpoint);
  const UpwindGeometry geometry(g.grid(), cfg.viewpoint, cfg.envelope);
  const Upwind up = geometry.at(node);
  const double vp_value = cfg.envelope == Envelope::upper ? resolve_viewpoint_value(g, cfg) : 0.0;
  const double g_min = (cfg.envelope == Envelope::lower && up.kind == NodeKind::viewpoint) ? g.min() : 0.0;
  return node_residual(u, g, up, vp_value, g_min, cfg.envelope, node);
}

double max_abs_residual(const ScalarField& u, const ScalarField& g, const SolverConfig& cfg) {
  check_same_grid(u, g);
  check_viewpoint(g.grid(), cfg.viewpoint);
  const UpwindGeometry geometry(g.grid(), cfg.viewpoint, cfg.envelope);
  const double vp_value = cfg.envelope == Envelope::upper ? resolve_viewpoint_value(g, cfg) : 0.0;
  const double g_min = g.min();
  double worst = 0.0;
  for (std::size_t f = 0; f < g.size(); ++f)
    worst = std::max(worst, std::abs(node_residual(u, g, geometry.at(f), vp_value, g_min, cfg.envelope, f)));
  return worst;
}

SolveReport solve(const ScalarField& g, const SolverConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const Grid& grid = g.grid();
  check_viewpoint(grid, cfg.viewpoint);
  if (!g.all_finite()) throw DomainError("obstacle field contains non-finite values");

  const UpwindGeometry geometry(grid, cfg.viewpoint, cfg.envelope);
  std::vector<std::size_t> order = sweep_order(grid, cfg.viewpoint);
  if (cfg.envelope == Envelope::lower) std::reverse(order.begin(), order.end());

  SolveReport report{ScalarField(g), 0.0, 0, 0.0, 0.0};
  ScalarField& u = report.solution;
  const double vp_value = cfg.envelope == Envelope::upper ? resolve_viewpoint_value(g, cfg) : 0.0;
  const double g_min = g.min();
  std::vector<std::uint8_t> done(grid.size(), 0);

  for (const std::size_t f : order) {
    const Upwind up = geometry.at(f);
    double value = g[f];
    switch (up.kind) {
      case NodeKind::viewpoint:
        value = cfg.envelope == Envelope::upper ? std::max(g[f], vp_value) : g_min;
        break;
      case NodeKind::anchor:
        value = std::max(g[f], vp_value);
        break;
      case NodeKind::exits_box:
        break;
      case NodeKind::interior: {
        for_each_stencil_node(grid, up, [&](std::size_t s) {
          if (!done[s]) throw std::logic_error("sweep order visited a node before its upwind stencil");
        });
        const double upstream = multilinear(u.values(), grid, up.base, up.step, up.frac);
        value = cfg.envelope == Envelope::upper ? std::max(g[f], upstream) : std::min(g[f], upstream);
        break;
      }
    }
    u[f] = value;
    done[f] = 1;
    ++report.sweep_node_count;
  }

  report.viewpoint_value = vp_value;
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  SolverConfig resolved = cfg;
  if (cfg.envelope == Envelope::upper) resolved.viewpoint_value = vp_value;
  report.max_abs_residual = max_abs_residual(u, g, resolved);
  return report;
}

Mask is_visible(const ScalarField& u, double alpha) {
  Mask mask{u.grid(), std::vector<std::uint8_t>(u.size(), 0)};
  for (std::size_t f = 0; f < u.size(); ++f) mask.values[f] = u[f] <= alpha ? 1 : 0;
  return mask;
}

}  // namespace starvis
