#include "starvis/scene_config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace starvis {

using nlohmann::json;

namespace {

class Reader {
 public:
  Reader(int dim, std::filesystem::path base, const Grid& grid) : dim_(dim), base_(std::move(base)), grid_(grid) {}

  ObstacleSpec obstacle(const json& j, const std::string& path) const {
    if (!j.is_object() || j.size() != 1) throw ConfigError(path, "obstacle node must be an object with one key");
    const std::string key = j.begin().key();
    const json& body = j.begin().value();
    const std::string at = path + "." + key;
    if (key == "constant") return ObstacleSpec::constant(real(body, at));
    if (key == "cone") {
      expect_object(body, at);
      return ObstacleSpec::cone(dim_, point(member(body, "apex", at), at + ".apex"),
                                optional_real(body, "height", at, 0.0), optional_real(body, "slope", at, 1.0));
    }
    if (key == "ball") {
      expect_object(body, at);
      return ObstacleSpec::ball(dim_, point(member(body, "center", at), at + ".center"),
                                real(member(body, "radius", at), at + ".radius"));
    }
    if (key == "box") {
      expect_object(body, at);
      return ObstacleSpec::box(dim_, point(member(body, "center", at), at + ".center"),
                               half_widths(member(body, "half", at), at + ".half"));
    }
    if (key == "halfspace") {
      expect_object(body, at);
      return ObstacleSpec::halfspace(dim_, point(member(body, "normal", at), at + ".normal"),
                                     real(member(body, "offset", at), at + ".offset"));
    }
    if (key == "point_cloud") {
      expect_object(body, at);
      const json& file = member(body, "file", at);
      if (!file.is_string()) throw ConfigError(at + ".file", "must be a string");
      const std::string source = file.get<std::string>();
      std::filesystem::path resolved = source;
      if (resolved.is_relative() && !base_.empty()) resolved = base_ / resolved;
      const double radius = optional_real(body, "radius", at, default_cloud_radius(grid_));
      if (!(radius > 0.0)) throw ConfigError(at + ".radius", "must be positive");
      return ObstacleSpec::point_cloud(read_point_cloud(resolved, dim_, radius), source);
    }
    if (key == "analytic") {
      if (!body.is_string()) throw ConfigError(at, "must name a registered function");
      const std::string name = body.get<std::string>();
      return ObstacleSpec::analytic(name, find_analytic(name));
    }
    if (key == "negate") return ObstacleSpec::negate(obstacle(body, at));
    if (key == "min" || key == "max") {
      if (!body.is_array() || body.empty()) throw ConfigError(at, "must be a non-empty array");
      std::vector<ObstacleSpec> children;
      for (std::size_t c = 0; c < body.size(); ++c)
        children.push_back(obstacle(body[c], at + "[" + std::to_string(c) + "]"));
      return key == "min" ? ObstacleSpec::min(std::move(children)) : ObstacleSpec::max(std::move(children));
    }
    if (key == "scale") {
      expect_object(body, at);
      return ObstacleSpec::scale(real(member(body, "factor", at), at + ".factor"),
                                 obstacle(member(body, "of", at), at + ".of"));
    }
    if (key == "offset") {
      expect_object(body, at);
      return ObstacleSpec::offset(real(member(body, "amount", at), at + ".amount"),
                                  obstacle(member(body, "of", at), at + ".of"));
    }
    throw ConfigError(path, "unknown obstacle kind '" + key + "'");
  }

  ComposeExpr expression(const json& j, const std::string& path, std::size_t views) const {
    if (!j.is_object() || j.size() != 1) throw ConfigError(path, "expression node must be an object with one key");
    const std::string key = j.begin().key();
    const json& body = j.begin().value();
    const std::string at = path + "." + key;
    if (key == "view") {
      if (!body.is_number_unsigned()) throw ConfigError(at, "must be a viewpoint position");
      const auto v = body.get<std::size_t>();
      if (v >= views) throw ConfigError(at, "refers to a missing viewpoint");
      return ComposeExpr::leaf(v);
    }
    if (key == "min" || key == "max") {
      if (!body.is_array() || body.empty()) throw ConfigError(at, "must be a non-empty array");
      std::vector<ComposeExpr> children;
      for (std::size_t c = 0; c < body.size(); ++c)
        children.push_back(expression(body[c], at + "[" + std::to_string(c) + "]", views));
      return key == "min" ? ComposeExpr::min(std::move(children)) : ComposeExpr::max(std::move(children));
    }
    if (key == "at_least") {
      expect_object(body, at);
      const json& k = member(body, "k", at);
      if (!k.is_number_unsigned()) throw ConfigError(at + ".k", "must be a positive integer");
      const json& of = member(body, "of", at);
      if (!of.is_array() || of.empty()) throw ConfigError(at + ".of", "must be a non-empty array");
      std::vector<ComposeExpr> children;
      for (std::size_t c = 0; c < of.size(); ++c)
        children.push_back(expression(of[c], at + ".of[" + std::to_string(c) + "]", views));
      const auto kk = k.get<std::size_t>();
      if (kk < 1 || kk > children.size()) throw ConfigError(at + ".k", "must lie between 1 and the operand count");
      return ComposeExpr::at_least(kk, std::move(children));
    }
    throw ConfigError(path, "unknown expression kind '" + key + "'");
  }

  Vec point(const json& j, const std::string& path) const {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(dim_))
      throw ConfigError(path, "must be an array of " + std::to_string(dim_) + " numbers");
    Vec p{};
    for (int k = 0; k < dim_; ++k) p[k] = real(j[static_cast<std::size_t>(k)], path);
    return p;
  }

  static double real(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path, "must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
    return v;
  }

  static const json& member(const json& obj, const char* key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(path + "." + key, "missing");
    return *it;
  }

  static void expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "must be an object");
  }

 private:
  double optional_real(const json& obj, const char* key, const std::string& path, double fallback) const {
    const auto it = obj.find(key);
    return it == obj.end() ? fallback : real(*it, path + "." + key);
  }

  Vec half_widths(const json& j, const std::string& path) const {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(dim_))
      throw ConfigError(path, "must be an array of " + std::to_string(dim_) + " numbers or nulls");
    Vec half{};
    for (int k = 0; k < dim_; ++k) {
      const json& v = j[static_cast<std::size_t>(k)];
      half[k] = v.is_null() ? std::numeric_limits<double>::infinity() : real(v, path);
    }
    return half;
  }

  int dim_;
  std::filesystem::path base_;
  const Grid& grid_;
};

json vec_json(const Vec& v, int dim) {
  json a = json::array();
  for (int k = 0; k < dim; ++k) a.push_back(v[k]);
  return a;
}

json obstacle_json(const ObstacleSpec& s) {
  using K = ObstacleSpec::Kind;
  const int dim = s.dim();
  switch (s.kind()) {
    case K::constant:
      return {{"constant", s.scalar_param()}};
    case K::cone:
      return {{"cone", {{"apex", vec_json(s.center(), dim)}, {"height", s.scalar_param()}, {"slope", s.slope()}}}};
    case K::ball:
      return {{"ball", {{"center", vec_json(s.center(), dim)}, {"radius", s.scalar_param()}}}};
    case K::box: {
      json half = json::array();
      for (int k = 0; k < dim; ++k)
        half.push_back(std::isfinite(s.vector_param()[k]) ? json(s.vector_param()[k]) : json(nullptr));
      return {{"box", {{"center", vec_json(s.center(), dim)}, {"half", half}}}};
    }
    case K::halfspace:
      return {{"halfspace", {{"normal", vec_json(s.vector_param(), dim)}, {"offset", s.scalar_param()}}}};
    case K::point_cloud:
      if (s.name().empty()) throw ConfigError("obstacle.point_cloud", "in-memory point cloud has no source file");
      return {{"point_cloud", {{"file", s.name()}, {"radius", s.scalar_param()}}}};
    case K::analytic:
      return {{"analytic", s.name()}};
    case K::negate:
      return {{"negate", obstacle_json(s.children().front())}};
    case K::min:
    case K::max: {
      json a = json::array();
      for (const ObstacleSpec& c : s.children()) a.push_back(obstacle_json(c));
      return {{s.kind() == K::min ? "min" : "max", a}};
    }
    case K::scale:
      return {{"scale", {{"factor", s.scalar_param()}, {"of", obstacle_json(s.children().front())}}}};
    case K::offset:
      return {{"offset", {{"amount", s.scalar_param()}, {"of", obstacle_json(s.children().front())}}}};
  }
  return nullptr;
}

json expression_json(const ComposeExpr& e) {
  switch (e.op()) {
    case ComposeExpr::Op::leaf:
      return {{"view", e.field()}};
    case ComposeExpr::Op::min:
    case ComposeExpr::Op::max: {
      json a = json::array();
      for (const ComposeExpr& c : e.children()) a.push_back(expression_json(c));
      return {{e.op() == ComposeExpr::Op::min ? "min" : "max", a}};
    }
    case ComposeExpr::Op::at_least: {
      json a = json::array();
      for (const ComposeExpr& c : e.children()) a.push_back(expression_json(c));
      return {{"at_least", {{"k", e.k()}, {"of", a}}}};
    }
  }
  return nullptr;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

ComposeExpr SceneConfig::composition() const {
  if (semantics == Semantics::custom) {
    if (!expression) throw ConfigError("semantics", "custom semantics without an expression");
    return *expression;
  }
  std::vector<ComposeExpr> leaves;
  for (std::size_t v = 0; v < viewpoints.size(); ++v) leaves.push_back(ComposeExpr::leaf(v));
  return semantics == Semantics::any ? ComposeExpr::min(std::move(leaves)) : ComposeExpr::max(std::move(leaves));
}

double default_cloud_radius(const Grid& grid) { return 2.0 * grid.max_spacing(); }

SceneConfig parse_scene(std::string_view text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    throw ParseError(line, column, "malformed scene JSON");
  }
  if (!root.is_object()) throw ConfigError("", "scene must be a JSON object");
  static const char* const known[] = {"grid", "obstacle", "viewpoints", "semantics", "alpha", "envelope", "oracle_step"};
  for (const auto& [key, value] : root.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError(key, "unknown key");
  }

  SceneConfig cfg;
  const json& g = Reader::member(root, "grid", "");
  Reader::expect_object(g, "grid");
  const json& lo = Reader::member(g, "lo", "grid");
  const json& hi = Reader::member(g, "hi", "grid");
  const json& n = Reader::member(g, "n", "grid");
  if (!lo.is_array() || lo.empty() || lo.size() > kMaxDim) throw ConfigError("grid.lo", "must hold 1 to 3 numbers");
  const int dim = static_cast<int>(lo.size());
  if (!hi.is_array() || hi.size() != lo.size()) throw ConfigError("grid.hi", "must match grid.lo in length");
  if (!n.is_array() || n.size() != lo.size()) throw ConfigError("grid.n", "must match grid.lo in length");
  Vec vlo{}, vhi{};
  Index vn{};
  for (int k = 0; k < dim; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    vlo[k] = Reader::real(lo[kk], "grid.lo");
    vhi[k] = Reader::real(hi[kk], "grid.hi");
    if (!n[kk].is_number_integer()) throw ConfigError("grid.n", "must hold integers");
    vn[k] = n[kk].get<int>();
  }
  cfg.grid = Grid(dim, vlo, vhi, vn);

  const Reader reader(dim, base_dir, cfg.grid);
  cfg.obstacle = reader.obstacle(Reader::member(root, "obstacle", ""), "obstacle");

  const json& vps = Reader::member(root, "viewpoints", "");
  if (!vps.is_array() || vps.empty()) throw ConfigError("viewpoints", "must be a non-empty array of points");
  for (std::size_t v = 0; v < vps.size(); ++v) {
    const std::string at = "viewpoints[" + std::to_string(v) + "]";
    Viewpoint vp{reader.point(vps[v], at)};
    if (!cfg.grid.contains(vp.x)) throw ConfigError(at, "lies outside the grid box");
    cfg.viewpoints.push_back(vp);
  }

  if (const auto it = root.find("semantics"); it != root.end()) {
    if (it->is_string()) {
      const auto s = it->get<std::string>();
      if (s == "any")
        cfg.semantics = Semantics::any;
      else if (s == "all")
        cfg.semantics = Semantics::all;
      else
        throw ConfigError("semantics", "must be \"any\", \"all\" or an expression");
    } else {
      cfg.semantics = Semantics::custom;
      cfg.expression = reader.expression(*it, "semantics", cfg.viewpoints.size());
    }
  }
  if (const auto it = root.find("alpha"); it != root.end()) cfg.alpha = Reader::real(*it, "alpha");
  if (const auto it = root.find("envelope"); it != root.end()) {
    const std::string e = it->is_string() ? it->get<std::string>() : "";
    if (e == "upper")
      cfg.envelope = Envelope::upper;
    else if (e == "lower")
      cfg.envelope = Envelope::lower;
    else
      throw ConfigError("envelope", "must be \"upper\" or \"lower\"");
  }
  if (const auto it = root.find("oracle_step"); it != root.end() && !it->is_null()) {
    cfg.oracle_step = Reader::real(*it, "oracle_step");
    if (!(*cfg.oracle_step > 0.0)) throw ConfigError("oracle_step", "must be positive");
  }
  return cfg;
}

SceneConfig load_scene(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scene file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scene(text.str(), path.parent_path());
}

std::string serialize_scene(const SceneConfig& config) {
  const Grid& grid = config.grid;
  json root;
  json n = json::array();
  for (int k = 0; k < grid.dim(); ++k) n.push_back(grid.n()[k]);
  root["grid"] = {{"lo", vec_json(grid.lo(), grid.dim())}, {"hi", vec_json(grid.hi(), grid.dim())}, {"n", n}};
  root["obstacle"] = obstacle_json(config.obstacle);
  json vps = json::array();
  for (const Viewpoint& vp : config.viewpoints) vps.push_back(vec_json(vp.x, grid.dim()));
  root["viewpoints"] = vps;
  switch (config.semantics) {
    case Semantics::any:
      root["semantics"] = "any";
      break;
    case Semantics::all:
      root["semantics"] = "all";
      break;
    case Semantics::custom:
      root["semantics"] = expression_json(config.composition());
      break;
  }
  root["alpha"] = config.alpha;
  root["envelope"] = config.envelope == Envelope::upper ? "upper" : "lower";
  if (config.oracle_step) root["oracle_step"] = *config.oracle_step;
  return root.dump(2) + "\n";
}

}  // namespace starvis
