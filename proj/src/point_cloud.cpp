#include "starvis/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

namespace starvis {

namespace {

double squared_distance(const Vec& a, const Vec& b, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

constexpr int kMaxBinsPerAxis = 256;

}  // namespace

PointCloud read_point_cloud(const std::filesystem::path& path, int dim, double radius) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open point cloud file " + path.string());
  PointCloud cloud;
  cloud.dim = dim;
  cloud.radius = radius;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    Vec p{};
    int count = 0;
    double v = 0.0;
    while (fields >> v) {
      if (count < kMaxDim) p[count] = v;
      ++count;
    }
    if (!fields.eof()) throw ParseError(line_no, 1, "non-numeric value in point cloud");
    if (count != dim)
      throw ParseError(line_no, 1, "expected " + std::to_string(dim) + " columns, got " + std::to_string(count));
    for (int k = 0; k < dim; ++k)
      if (!std::isfinite(p[k])) throw ParseError(line_no, 1, "non-finite coordinate");
    cloud.points.push_back(p);
  }
  if (cloud.points.empty()) throw ConfigError("point_cloud", "point cloud file has no points");
  return cloud;
}

NearestPoint::NearestPoint(const PointCloud& cloud) : dim_(cloud.dim), points_(cloud.points) {
  if (points_.empty()) throw ConfigError("point_cloud", "empty point cloud");
  Vec lo = points_.front(), hi = points_.front();
  for (const Vec& p : points_)
    for (int k = 0; k < dim_; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  origin_ = lo;

  // Aim for a couple of points per occupied bin.
  double volume = 1.0;
  double longest = 0.0;
  for (int k = 0; k < dim_; ++k) longest = std::max(longest, hi[k] - lo[k]);
  if (longest == 0.0) longest = 1.0;
  for (int k = 0; k < dim_; ++k) volume *= std::max(hi[k] - lo[k], longest / kMaxBinsPerAxis);
  cell_ = std::pow(2.0 * volume / static_cast<double>(points_.size()), 1.0 / dim_);
  cell_ = std::max(cell_, longest / kMaxBinsPerAxis);

  std::size_t total = 1;
  for (int k = 0; k < dim_; ++k) {
    bins_[k] = std::min(kMaxBinsPerAxis + 1, static_cast<int>(std::floor((hi[k] - lo[k]) / cell_)) + 1);
    total *= static_cast<std::size_t>(bins_[k]);
  }

  std::vector<std::size_t> point_bin(points_.size());
  std::vector<std::size_t> counts(total + 1, 0);
  for (std::size_t p = 0; p < points_.size(); ++p) {
    std::array<int, kMaxDim> b{};
    for (int k = 0; k < dim_; ++k)
      b[k] = std::clamp(static_cast<int>(std::floor((points_[p][k] - origin_[k]) / cell_)), 0, bins_[k] - 1);
    point_bin[p] = bin_flat(b);
    ++counts[point_bin[p] + 1];
  }
  for (std::size_t b = 0; b < total; ++b) counts[b + 1] += counts[b];
  start_ = counts;
  order_.resize(points_.size());
  std::vector<std::size_t> cursor(start_.begin(), start_.end() - 1);
  for (std::size_t p = 0; p < points_.size(); ++p) order_[cursor[point_bin[p]]++] = p;
}

std::size_t NearestPoint::bin_flat(const std::array<int, kMaxDim>& b) const {
  std::size_t f = 0;
  for (int k = 0; k < dim_; ++k) f = f * static_cast<std::size_t>(bins_[k]) + static_cast<std::size_t>(b[k]);
  return f;
}

double NearestPoint::distance(const Vec& q) const {
  std::array<int, kMaxDim> center{};
  for (int k = 0; k < dim_; ++k)
    center[k] = std::clamp(static_cast<int>(std::floor((q[k] - origin_[k]) / cell_)), 0, bins_[k] - 1);

  double best = std::numeric_limits<double>::infinity();
  const double slack = 1e-9 * cell_;
  for (int r = 0;; ++r) {
    // Visit bins on the Chebyshev shell of radius r around the query bin.
    std::array<int, kMaxDim> lo{}, hi{};
    for (int k = 0; k < dim_; ++k) {
      lo[k] = std::max(center[k] - r, 0);
      hi[k] = std::min(center[k] + r, bins_[k] - 1);
    }
    std::array<int, kMaxDim> b = lo;
    while (true) {
      bool on_shell = false;
      for (int k = 0; k < dim_; ++k)
        if (std::abs(b[k] - center[k]) == r) on_shell = true;
      if (on_shell) {
        const std::size_t f = bin_flat(b);
        for (std::size_t s = start_[f]; s < start_[f + 1]; ++s)
          best = std::min(best, squared_distance(points_[order_[s]], q, dim_));
      }
      int k = dim_ - 1;
      while (k >= 0 && b[k] == hi[k]) {
        b[k] = lo[k];
        --k;
      }
      if (k < 0) break;
      ++b[k];
    }

    // Every unvisited point lies beyond one of the interior faces of the
    // visited block; stop once none of those faces is closer than `best`.
    double bound = std::numeric_limits<double>::infinity();
    for (int k = 0; k < dim_; ++k) {
      if (center[k] - r > 0) bound = std::min(bound, q[k] - (origin_[k] + (center[k] - r) * cell_));
      if (center[k] + r < bins_[k] - 1) bound = std::min(bound, origin_[k] + (center[k] + r + 1) * cell_ - q[k]);
    }
    if (bound == std::numeric_limits<double>::infinity()) break;
    bound = std::max(bound - slack, 0.0);
    if (best <= bound * bound) break;
  }
  return std::sqrt(best);
}

double brute_force_distance(const PointCloud& cloud, const Vec& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec& c : cloud.points) best = std::min(best, squared_distance(c, p, cloud.dim));
  return std::sqrt(best);
}

ScalarField cloud_to_field(const PointCloud& cloud, const Grid& grid) {
  if (cloud.dim != grid.dim()) throw ConfigError("point_cloud", "cloud dimension does not match grid");
  const NearestPoint index(cloud);
  ScalarField field(grid);
  for (std::size_t f = 0; f < grid.size(); ++f) field[f] = cloud.radius - index.distance(grid.node_coord(f));
  return field;
}

}  // namespace starvis
