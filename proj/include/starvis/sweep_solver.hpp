#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "starvis/grid.hpp"
#include "starvis/ray_oracle.hpp"

namespace starvis {

struct SolverConfig {
  Envelope envelope = Envelope::upper;
  Viewpoint viewpoint;
  // g(x*). When absent it is interpolated from the sampled obstacle.
  std::optional<double> viewpoint_value;
};

struct SolveReport {
  ScalarField solution;
  double max_abs_residual = 0.0;
  std::size_t sweep_node_count = 0;
  double wall_time = 0.0;  // seconds
  double viewpoint_value = 0.0;
};

/// Causal single-pass visiting order for the upper envelope, as flat indices.
///
/// Nodes are ordered by scaled Chebyshev distance to x* (max_k |x_k - x*_k| / h_k),
/// then by scaled L1 distance, then by flat index. Every upwind stencil node
/// with nonzero weight has strictly smaller Chebyshev distance than the node
/// it serves, so each value is final before it is read. Within an orthant
/// around x*, a node always precedes the nodes farther out along any axis.
/// The lower envelope walks the same sequence backwards.
std::vector<std::size_t> sweep_order(const Grid& grid, const Viewpoint& vp);

/// Scheme residual at one node.
///
/// Upper: min{u - g, (u - I_h u(x~)) / |x - x~|} with x~ the foot point toward x*.
/// Lower: max{w - g, (w - I_h w(x~)) / |x - x~|} with x~ the foot point away
/// from x*; nodes whose outgoing ray leaves the box give w - g.
double residual(const ScalarField& u, const ScalarField& g, const SolverConfig& cfg, std::size_t node);

/// Solves the discrete obstacle problem in one ordered pass over the grid.
///
/// Upper envelope: u(x) = max{g(x), I_h u(x~)}; nodes whose neighbor box holds x*
/// use u = max{g(x), g(x*)}. Lower envelope: w(x) = min{g(x), I_h w(x~)},
/// boundary nodes whose ray leaves the box keep w = g, and a node at x*
/// takes min g.
SolveReport solve(const ScalarField& g, const SolverConfig& cfg);

/// Max |residual| over all nodes.
double max_abs_residual(const ScalarField& u, const ScalarField& g, const SolverConfig& cfg);

/// Nodes with u <= alpha.
Mask is_visible(const ScalarField& u, double alpha);

}  // namespace starvis
