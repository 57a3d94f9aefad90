#pragma once

#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "starvis/grid.hpp"
#include "starvis/sweep_solver.hpp"

namespace starvis {

using ViewpointSet = std::vector<Viewpoint>;

/// Upper-envelope solve per viewpoint, run concurrently.
///
/// `viewpoint_values`, when non-empty, supplies g(x*) for each viewpoint.
std::vector<ScalarField> solve_each(const ScalarField& g, const ViewpointSet& vps,
                                    std::span<const double> viewpoint_values = {});

/// Visible from at least one viewpoint: nodewise min of the per-viewpoint solutions.
ScalarField solve_any(const ScalarField& g, const ViewpointSet& vps, std::span<const double> viewpoint_values = {});

/// Visible from every viewpoint: nodewise max of the per-viewpoint solutions.
ScalarField solve_all(const ScalarField& g, const ViewpointSet& vps, std::span<const double> viewpoint_values = {});

/// Min/max expression over per-viewpoint fields.
///
/// Leaves refer to fields by position. `at_least(k, ...)` evaluates to the
/// k-th smallest child value, so its sublevel set is the set of points seen
/// by at least k of the children.
class ComposeExpr {
 public:
  static ComposeExpr leaf(std::size_t field);
  static ComposeExpr min(std::vector<ComposeExpr> children);
  static ComposeExpr max(std::vector<ComposeExpr> children);
  static ComposeExpr at_least(std::size_t k, std::vector<ComposeExpr> children);

  enum class Op { leaf, min, max, at_least };
  Op op() const { return op_; }
  std::size_t field() const { return field_; }
  std::size_t k() const { return k_; }
  const std::vector<ComposeExpr>& children() const { return children_; }

  double evaluate(std::span<const double> values) const;
  std::size_t max_field() const;

 private:
  Op op_ = Op::leaf;
  std::size_t field_ = 0;
  std::size_t k_ = 0;
  std::vector<ComposeExpr> children_;
};

ScalarField compose(std::span<const ScalarField> fields, const ComposeExpr& expr);

/// Connected components of the true cells, face-adjacent neighbors only.
std::size_t count_components(const Mask& mask);

}  // namespace starvis
