#include "starvis/scenes.hpp"

#include <limits>

namespace starvis::scenes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

SceneConfig cone(int n) {
  SceneConfig s;
  s.grid = Grid::cube(2, -2.0, 2.0, n);
  s.obstacle = ObstacleSpec::cone(2, {0.0, 0.0});
  s.viewpoints = {Viewpoint{{-1.0, -1.0}}};
  return s;
}

SceneConfig four_obstacles(int n) {
  SceneConfig s;
  s.grid = Grid::cube(2, -2.0, 2.0, n);
  // g = -min{g1, g2, g3, g4} = max{-g1, -g2, -g3, -g4}
  s.obstacle = ObstacleSpec::max({
      ObstacleSpec::scale(2.0, ObstacleSpec::box(2, {-1.5, -0.2}, {0.0, 0.0})),
      ObstacleSpec::box(2, {0.0, 0.3}, {0.0, 0.0}),
      ObstacleSpec::ball(2, {-0.3, 1.5}, 0.0),
      ObstacleSpec::ball(2, {-0.3, -1.4}, 0.0),
  });
  s.viewpoints = {Viewpoint{{-1.5, -1.4}}, Viewpoint{{1.5, -0.3}}};
  s.alpha = -0.5;
  return s;
}

SceneConfig two_buildings(int n) {
  SceneConfig s;
  s.grid = Grid(3, {-4.0, -3.0, 0.0}, {6.0, 7.0, 5.0}, {n, n, n});
  // Buildings are open below: max(|x1+2|, |x2|, x3) <= 1 and max(|x1-3|, |x2-4|, x3) <= 2.
  auto building = [](const Vec& center, double half) {
    return ObstacleSpec::min({ObstacleSpec::box(3, center, {half, half, kInf}),
                              ObstacleSpec::halfspace(3, {0.0, 0.0, 1.0}, half)});
  };
  s.obstacle = ObstacleSpec::max({building({-2.0, 0.0, 0.0}, 1.0), building({3.0, 4.0, 0.0}, 2.0)});
  s.viewpoints = {Viewpoint{{0.5, 2.0, 0.5}}};
  return s;
}

SceneConfig wall(int n) {
  SceneConfig s;
  s.grid = Grid::cube(2, -2.0, 2.0, n);
  s.obstacle = ObstacleSpec::box(2, {0.0, 0.0}, {0.05, 0.6});
  s.viewpoints = {Viewpoint{{-1.0, 0.0}}, Viewpoint{{1.0, 0.0}}};
  s.semantics = Semantics::all;
  return s;
}

SceneConfig abs_1d(int n) {
  SceneConfig s;
  s.grid = Grid(1, {-3.0}, {1.0}, {n});
  s.obstacle = ObstacleSpec::cone(1, {-1.0}, 0.0, -1.0);
  s.viewpoints = {Viewpoint{{0.0}}};
  return s;
}

}  // namespace starvis::scenes
