#include "starvis/multiview.hpp"

#include <algorithm>
#include <future>

namespace starvis {

std::vector<ScalarField> solve_each(const ScalarField& g, const ViewpointSet& vps,
                                    std::span<const double> viewpoint_values) {
  if (vps.empty()) throw ConfigError("viewpoints", "viewpoint set is empty");
  if (!viewpoint_values.empty() && viewpoint_values.size() != vps.size())
    throw ConfigError("viewpoints", "one viewpoint value per viewpoint required");
  for (const Viewpoint& vp : vps) check_viewpoint(g.grid(), vp);

  std::vector<std::future<ScalarField>> pending;
  pending.reserve(vps.size());
  for (std::size_t v = 0; v < vps.size(); ++v) {
    SolverConfig cfg;
    cfg.viewpoint = vps[v];
    if (!viewpoint_values.empty()) cfg.viewpoint_value = viewpoint_values[v];
    pending.push_back(std::async(std::launch::async, [&g, cfg] { return solve(g, cfg).solution; }));
  }
  std::vector<ScalarField> out;
  out.reserve(vps.size());
  for (auto& p : pending) out.push_back(p.get());
  return out;
}

namespace {

template <class Op>
ScalarField reduce(std::vector<ScalarField> fields, Op op) {
  ScalarField out = std::move(fields.front());
  for (std::size_t i = 1; i < fields.size(); ++i)
    for (std::size_t f = 0; f < out.size(); ++f) out[f] = op(out[f], fields[i][f]);
  return out;
}

}  // namespace

ScalarField solve_any(const ScalarField& g, const ViewpointSet& vps, std::span<const double> viewpoint_values) {
  return reduce(solve_each(g, vps, viewpoint_values), [](double a, double b) { return std::min(a, b); });
}

ScalarField solve_all(const ScalarField& g, const ViewpointSet& vps, std::span<const double> viewpoint_values) {
  return reduce(solve_each(g, vps, viewpoint_values), [](double a, double b) { return std::max(a, b); });
}

ComposeExpr ComposeExpr::leaf(std::size_t field) {
  ComposeExpr e;
  e.op_ = Op::leaf;
  e.field_ = field;
  return e;
}

ComposeExpr ComposeExpr::min(std::vector<ComposeExpr> children) {
  if (children.empty()) throw ConfigError("semantics", "min needs at least one operand");
  ComposeExpr e;
  e.op_ = Op::min;
  e.children_ = std::move(children);
  return e;
}

ComposeExpr ComposeExpr::max(std::vector<ComposeExpr> children) {
  if (children.empty()) throw ConfigError("semantics", "max needs at least one operand");
  ComposeExpr e;
  e.op_ = Op::max;
  e.children_ = std::move(children);
  return e;
}

ComposeExpr ComposeExpr::at_least(std::size_t k, std::vector<ComposeExpr> children) {
  if (k < 1 || k > children.size()) throw ConfigError("semantics", "at_least needs 1 <= k <= operand count");
  ComposeExpr e;
  e.op_ = Op::at_least;
  e.k_ = k;
  e.children_ = std::move(children);
  return e;
}

double ComposeExpr::evaluate(std::span<const double> values) const {
  switch (op_) {
    case Op::leaf:
      return values[field_];
    case Op::min: {
      double v = children_.front().evaluate(values);
      for (std::size_t c = 1; c < children_.size(); ++c) v = std::min(v, children_[c].evaluate(values));
      return v;
    }
    case Op::max: {
      double v = children_.front().evaluate(values);
      for (std::size_t c = 1; c < children_.size(); ++c) v = std::max(v, children_[c].evaluate(values));
      return v;
    }
    case Op::at_least: {
      std::vector<double> v;
      v.reserve(children_.size());
      for (const ComposeExpr& c : children_) v.push_back(c.evaluate(values));
      std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k_ - 1), v.end());
      return v[k_ - 1];
    }
  }
  return 0.0;
}

std::size_t ComposeExpr::max_field() const {
  if (op_ == Op::leaf) return field_;
  std::size_t m = 0;
  for (const ComposeExpr& c : children_) m = std::max(m, c.max_field());
  return m;
}

ScalarField compose(std::span<const ScalarField> fields, const ComposeExpr& expr) {
  if (fields.empty()) throw ConfigError("fields", "nothing to compose");
  if (expr.max_field() >= fields.size()) throw ConfigError("semantics", "expression refers to a missing field");
  for (const ScalarField& f : fields)
    if (!(f.grid() == fields.front().grid())) throw ConfigError("fields", "fields live on different grids");
  ScalarField out(fields.front().grid());
  std::vector<double> values(fields.size());
  for (std::size_t f = 0; f < out.size(); ++f) {
    for (std::size_t i = 0; i < fields.size(); ++i) values[i] = fields[i][f];
    out[f] = expr.evaluate(values);
  }
  return out;
}

std::size_t count_components(const Mask& mask) {
  const Grid& grid = mask.grid;
  std::vector<std::uint8_t> seen(mask.values.size(), 0);
  std::vector<std::size_t> stack;
  std::size_t components = 0;
  for (std::size_t start = 0; start < mask.values.size(); ++start) {
    if (!mask.values[start] || seen[start]) continue;
    ++components;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t f = stack.back();
      stack.pop_back();
      const Index i = grid.unflat(f);
      for (int k = 0; k < grid.dim(); ++k) {
        for (int s : {-1, 1}) {
          const int j = i[k] + s;
          if (j < 0 || j >= grid.n()[k]) continue;
          const std::size_t nb = s < 0 ? f - grid.strides()[k] : f + grid.strides()[k];
          if (mask.values[nb] && !seen[nb]) {
            seen[nb] = 1;
            stack.push_back(nb);
          }
        }
      }
    }
  }
  return components;
}

}  // namespace starvis
