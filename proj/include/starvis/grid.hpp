#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "starvis/errors.hpp"

namespace starvis {

inline constexpr int kMaxDim = 3;

// Points and vectors carry kMaxDim slots; slots past the grid dimension are zero.
using Vec = std::array<double, kMaxDim>;
using Index = std::array<int, kMaxDim>;

/// Uniform Cartesian lattice over an axis-aligned box in 1, 2 or 3 dimensions.
///
/// Node `i` sits at `lo + i * spacing`, always computed from the index so that
/// coordinates never accumulate drift. Flat storage is row-major: the last
/// axis varies fastest.
class Grid {
 public:
  Grid(int dim, const Vec& lo, const Vec& hi, const Index& n);

  /// Same box and node count along every axis.
  static Grid cube(int dim, double lo, double hi, int n);

  int dim() const noexcept { return dim_; }
  const Vec& lo() const noexcept { return lo_; }
  const Vec& hi() const noexcept { return hi_; }
  const Index& n() const noexcept { return n_; }
  const Vec& spacing() const noexcept { return h_; }
  double max_spacing() const noexcept;
  double min_spacing() const noexcept;

  std::size_t size() const noexcept { return size_; }
  const std::array<std::size_t, kMaxDim>& strides() const noexcept { return strides_; }

  bool valid_index(const Index& i) const noexcept;
  std::size_t flat(const Index& i) const;
  Index unflat(std::size_t flat) const;

  Vec node_coord(const Index& i) const;
  Vec node_coord(std::size_t flat) const { return node_coord(unflat(flat)); }

  /// Closed-box membership.
  bool contains(const Vec& p) const noexcept;

  bool operator==(const Grid& other) const = default;

 private:
  int dim_;
  Vec lo_{};
  Vec hi_{};
  Index n_{};
  Vec h_{};
  std::array<std::size_t, kMaxDim> strides_{};
  std::size_t size_ = 0;
};

/// One real value per grid node, row-major.
class ScalarField {
 public:
  explicit ScalarField(Grid grid, double fill = 0.0);
  ScalarField(Grid grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator[](std::size_t flat) const { return values_[flat]; }
  double& operator[](std::size_t flat) { return values_[flat]; }
  double at(const Index& i) const { return values_[grid_.flat(i)]; }
  double& at(const Index& i) { return values_[grid_.flat(i)]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  double min() const;
  double max() const;
  double max_abs() const;
  bool all_finite() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Boolean per node, row-major.
struct Mask {
  Grid grid;
  std::vector<std::uint8_t> values;

  std::size_t count() const;
};

struct Viewpoint {
  Vec x{};
};

/// Throws ConfigError unless the viewpoint lies in the closed box.
void check_viewpoint(const Grid& grid, const Viewpoint& vp);

/// Continuous index-space position of `p`: (p - lo) / h per axis.
Vec to_index_space(const Grid& grid, const Vec& p);

double norm(const Vec& v, int dim);
double distance(const Vec& a, const Vec& b, int dim);

/// Convex combination (1-f)a + fb, clamped to [min(a,b), max(a,b)].
///
/// Monotone in a and b and never leaves the endpoint range, so nested use
/// keeps multilinear interpolation a convex, order-preserving operation in
/// floating point.
inline double lerp_bounded(double a, double b, double f) {
  const double v = (1.0 - f) * a + f * b;
  const double lo = a < b ? a : b;
  const double hi = a < b ? b : a;
  return v < lo ? lo : (v > hi ? hi : v);
}

/// Multilinear interpolation on an arbitrary axis-aligned stencil.
///
/// Along axis k the stencil spans nodes `base[k]` and `base[k] + step[k]`
/// with weight `frac[k]` on the second; a zero fraction touches only
/// `base[k]`.
double multilinear(std::span<const double> values, const Grid& grid, const Index& base,
                   const Index& step, const Vec& frac);

/// Piecewise-multilinear interpolant of the field at `p` (closed box).
double interp(const ScalarField& field, const Vec& p);

/// Foot point of the upwind ray from `x` toward the viewpoint.
///
/// The first point where segment [x, x*] leaves the box spanned by the
/// immediate neighbors of `x`. When x* is inside that box, x* itself.
Vec ray_foot(const Grid& grid, const Vec& x, const Viewpoint& vp);

}  // namespace starvis
