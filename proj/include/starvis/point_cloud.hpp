#pragma once

#include <filesystem>
#include <memory>
#include <vector>

#include "starvis/grid.hpp"

namespace starvis {

struct PointCloud {
  int dim = 3;
  std::vector<Vec> points;
  double radius = 0.0;  // inflation radius r of g = r - dist
};

/// Reads whitespace-separated coordinates, one point per line; '#' lines
/// and blank lines are skipped. Every point must have `dim` columns.
PointCloud read_point_cloud(const std::filesystem::path& path, int dim, double radius);

/// Exact nearest-point distance backed by uniform binning.
///
/// Candidates are visited shell by shell around the query's bin until no
/// unvisited bin can hold a closer point, so the result is bit-identical to
/// a brute-force scan.
class NearestPoint {
 public:
  explicit NearestPoint(const PointCloud& cloud);

  double distance(const Vec& p) const;
  int dim() const noexcept { return dim_; }

 private:
  int dim_;
  std::vector<Vec> points_;
  Vec origin_{};
  double cell_ = 1.0;
  std::array<int, kMaxDim> bins_{1, 1, 1};
  std::vector<std::size_t> start_;  // CSR offsets into order_, one per bin + 1
  std::vector<std::size_t> order_;

  std::size_t bin_flat(const std::array<int, kMaxDim>& b) const;
};

/// Reference O(points) distance; the test oracle for NearestPoint.
double brute_force_distance(const PointCloud& cloud, const Vec& p);

/// g = r - dist(node, cloud) at every node.
ScalarField cloud_to_field(const PointCloud& cloud, const Grid& grid);

}  // namespace starvis
