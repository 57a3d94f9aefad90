#pragma once

#include "starvis/scene_config.hpp"

namespace starvis::scenes {

// Ready-made scenes; `n` is the node count per axis.

/// g = -|x| on [-2,2]^2 seen from (-1,-1).
SceneConfig cone(int n);

/// Two squares and two disks on [-2,2]^2, viewpoints (-1.5,-1.4) and
/// (1.5,-0.3), alpha = -0.5.
SceneConfig four_obstacles(int n);

/// Two box buildings standing on z = 0 with a camera between them.
SceneConfig two_buildings(int n);

/// A thin wall between two viewpoints on [-2,2]^2; "all" semantics.
SceneConfig wall(int n);

/// g = |x + 1| on [-3,1] seen from 0.
SceneConfig abs_1d(int n);

}  // namespace starvis::scenes
