#include "starvis/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace starvis {

namespace {

std::string axis_name(int k) { return std::to_string(k); }

}  // namespace

Grid::Grid(int dim, const Vec& lo, const Vec& hi, const Index& n) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw ConfigError("grid.dim", "dimension must be 1, 2 or 3");
  size_ = 1;
  for (int k = 0; k < dim; ++k) {
    if (!std::isfinite(lo[k]) || !std::isfinite(hi[k]))
      throw ConfigError("grid", "non-finite bound on axis " + axis_name(k));
    if (!(lo[k] < hi[k])) throw ConfigError("grid.lo", "lo must be below hi on axis " + axis_name(k));
    if (n[k] < 2) throw ConfigError("grid.n", "need at least 2 nodes on axis " + axis_name(k));
    lo_[k] = lo[k];
    hi_[k] = hi[k];
    n_[k] = n[k];
    h_[k] = (hi[k] - lo[k]) / (n[k] - 1);
    size_ *= static_cast<std::size_t>(n[k]);
  }
  for (int k = dim; k < kMaxDim; ++k) n_[k] = 1;
  std::size_t stride = 1;
  for (int k = kMaxDim - 1; k >= 0; --k) {
    strides_[k] = k < dim ? stride : 0;
    if (k < dim) stride *= static_cast<std::size_t>(n_[k]);
  }
}

Grid Grid::cube(int dim, double lo, double hi, int n) {
  Vec l{}, u{};
  Index c{};
  for (int k = 0; k < dim; ++k) {
    l[k] = lo;
    u[k] = hi;
    c[k] = n;
  }
  return Grid(dim, l, u, c);
}

double Grid::max_spacing() const noexcept { return *std::max_element(h_.begin(), h_.begin() + dim_); }

double Grid::min_spacing() const noexcept { return *std::min_element(h_.begin(), h_.begin() + dim_); }

bool Grid::valid_index(const Index& i) const noexcept {
  for (int k = 0; k < dim_; ++k)
    if (i[k] < 0 || i[k] >= n_[k]) return false;
  return true;
}

std::size_t Grid::flat(const Index& i) const {
  if (!valid_index(i)) throw IndexError("grid index out of range");
  std::size_t f = 0;
  for (int k = 0; k < dim_; ++k) f += strides_[k] * static_cast<std::size_t>(i[k]);
  return f;
}

Index Grid::unflat(std::size_t flat) const {
  if (flat >= size_) throw IndexError("flat index out of range");
  Index i{};
  for (int k = 0; k < dim_; ++k) {
    i[k] = static_cast<int>(flat / strides_[k]);
    flat %= strides_[k];
  }
  return i;
}

Vec Grid::node_coord(const Index& i) const {
  if (!valid_index(i)) throw IndexError("grid index out of range");
  Vec p{};
  for (int k = 0; k < dim_; ++k) {
    // The last node is pinned to hi so the far corner is exact.
    p[k] = i[k] == n_[k] - 1 ? hi_[k] : lo_[k] + i[k] * h_[k];
  }
  return p;
}

bool Grid::contains(const Vec& p) const noexcept {
  for (int k = 0; k < dim_; ++k)
    if (!(p[k] >= lo_[k] && p[k] <= hi_[k])) return false;
  return true;
}

ScalarField::ScalarField(Grid grid, double fill) : grid_(std::move(grid)), values_(grid_.size(), fill) {}

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw ConfigError("field", "value count does not match grid size");
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

std::size_t Mask::count() const { return static_cast<std::size_t>(std::count(values.begin(), values.end(), 1)); }

void check_viewpoint(const Grid& grid, const Viewpoint& vp) {
  if (!grid.contains(vp.x)) throw ConfigError("viewpoint", "viewpoint lies outside the grid box");
}

Vec to_index_space(const Grid& grid, const Vec& p) {
  Vec s{};
  for (int k = 0; k < grid.dim(); ++k) s[k] = (p[k] - grid.lo()[k]) / grid.spacing()[k];
  return s;
}

double norm(const Vec& v, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) s += v[k] * v[k];
  return std::sqrt(s);
}

double distance(const Vec& a, const Vec& b, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

namespace {

double multilinear_rec(std::span<const double> values, const Grid& grid, const Index& base, const Index& step,
                       const Vec& frac, int axis, std::size_t offset) {
  if (axis < 0) return values[offset];
  const std::size_t stride = grid.strides()[axis];
  const std::size_t near = offset + stride * static_cast<std::size_t>(base[axis]);
  const double a = multilinear_rec(values, grid, base, step, frac, axis - 1, near);
  if (frac[axis] == 0.0) return a;
  const std::size_t far = offset + stride * static_cast<std::size_t>(base[axis] + step[axis]);
  const double b = multilinear_rec(values, grid, base, step, frac, axis - 1, far);
  return lerp_bounded(a, b, frac[axis]);
}

}  // namespace

double multilinear(std::span<const double> values, const Grid& grid, const Index& base, const Index& step,
                   const Vec& frac) {
  // Recurse from the last axis down so the innermost lerps run along axis 0.
  return multilinear_rec(values, grid, base, step, frac, grid.dim() - 1, 0);
}

double interp(const ScalarField& field, const Vec& p) {
  const Grid& grid = field.grid();
  Index base{}, step{};
  Vec frac{};
  for (int k = 0; k < grid.dim(); ++k) {
    const double extent = grid.hi()[k] - grid.lo()[k];
    const double slack = 1e-12 * extent;
    if (!(p[k] >= grid.lo()[k] - slack && p[k] <= grid.hi()[k] + slack))
      throw DomainError("interpolation point outside the grid box");
    double s = std::clamp((p[k] - grid.lo()[k]) / grid.spacing()[k], 0.0, double(grid.n()[k] - 1));
    if (const double r = std::round(s); std::abs(s - r) < 1e-12) s = r;
    int cell = std::min(static_cast<int>(std::floor(s)), grid.n()[k] - 2);
    base[k] = cell;
    step[k] = 1;
    frac[k] = std::clamp(s - cell, 0.0, 1.0);
  }
  return multilinear(field.values(), grid, base, step, frac);
}

Vec ray_foot(const Grid& grid, const Vec& x, const Viewpoint& vp) {
  const int dim = grid.dim();
  Vec d{};
  double m = 0.0;
  bool degenerate = true;
  for (int k = 0; k < dim; ++k) {
    d[k] = vp.x[k] - x[k];
    if (d[k] != 0.0) degenerate = false;
    m = std::max(m, std::abs(d[k]) / grid.spacing()[k]);
  }
  if (degenerate) throw DegenerateRayError("ray foot undefined at the viewpoint itself");
  if (m <= 1.0) return vp.x;
  Vec foot{};
  for (int k = 0; k < dim; ++k) {
    const double ratio = std::abs(d[k]) / grid.spacing()[k];
    if (ratio == m)
      foot[k] = x[k] + (d[k] > 0 ? grid.spacing()[k] : -grid.spacing()[k]);
    else
      foot[k] = x[k] + d[k] / m;
  }
  return foot;
}

}  // namespace starvis
