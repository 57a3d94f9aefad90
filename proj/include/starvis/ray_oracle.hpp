#pragma once

#include "starvis/grid.hpp"
#include "starvis/obstacle.hpp"

namespace starvis {

enum class Envelope { upper, lower };

struct RaySamplingConfig {
  double step = 0.0;  // arc-length spacing of samples along each ray
};

/// Max of g over samples of the segment from x* to x, both endpoints included.
double upper_envelope_at(const ObstacleSpec& spec, const Viewpoint& vp, const Vec& x, const RaySamplingConfig& cfg);

/// Min of g over samples of the ray leaving x away from x*, up to and
/// including its exit from the box. At x = x* this is the minimum of g over
/// the box, scanned at the sampling resolution.
double lower_envelope_at(const ObstacleSpec& spec, const Viewpoint& vp, const Vec& x, const Grid& box,
                         const RaySamplingConfig& cfg);

/// The chosen envelope at every grid node. Requires step <= min grid spacing.
ScalarField oracle_field(const ObstacleSpec& spec, const Viewpoint& vp, const Grid& grid, const RaySamplingConfig& cfg,
                         Envelope which);

/// Minimum of g over the closed box, scanned on a lattice no coarser than `step`.
double box_minimum(const ObstacleSpec& spec, const Grid& box, double step);

}  // namespace starvis
