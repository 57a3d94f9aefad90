#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "starvis/field_io.hpp"
#include "starvis/scene_config.hpp"
#include "starvis/scenes.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace starvis {
namespace {

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("starvis_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(FieldText, TwoByTwoBytes) {
  const Grid grid = Grid::cube(2, 0.0, 1.0, 2);
  const ScalarField f(grid, std::vector<double>{0.0, 1.0, 2.0, 3.0});
  std::ostringstream out;
  write_text(out, f);
  EXPECT_EQ(out.str(), "dim 2\nn 2 2\nlo 0 0\nhi 1 1\n0\n1\n2\n3\n");
}

TEST(FieldText, RoundTripIsByteIdentical) {
  const SceneConfig scene = scenes::four_obstacles(33);
  const ScalarField g = sample_obstacle(scene.obstacle, scene.grid);
  const fs::path dir = scratch_dir("roundtrip");
  export_field(g, dir / "a.txt", FieldFormat::text);
  const ScalarField back = import_field(dir / "a.txt");
  EXPECT_EQ(testing::values_of(back), testing::values_of(g));
  EXPECT_TRUE(back.grid() == g.grid());
  export_field(back, dir / "b.txt", FieldFormat::text);
  EXPECT_EQ(read_all(dir / "a.txt"), read_all(dir / "b.txt"));
  fs::remove_all(dir);
}

TEST(FieldText, FormatRealRoundTrips) {
  for (const double v : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, -0.0, 5e-324}) {
    EXPECT_EQ(std::strtod(format_real(v).c_str(), nullptr), v) << format_real(v);
  }
}

TEST(FieldText, MalformedInput) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_text(in);
  };
  EXPECT_THROW(parse("dim 4\n"), ParseError);
  EXPECT_THROW(parse("dim 1\nn 3\nlo 0\nhi 1\n0\n1\n"), ParseError);
  EXPECT_THROW(parse("dim 1\nn 2\nlo 0\nhi 1\n0\nx\n"), ParseError);
  EXPECT_THROW(parse("dim 1\nn 2\nlo 0\n"), ParseError);
  try {
    parse("dim 1\nn 2\nlo 0\nhi 1\n0\nnope\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 6u);
  }
  EXPECT_THROW(import_field("/nonexistent/starvis/field.txt"), IoError);
}

TEST(FieldVtk, StructuredPointsHeader) {
  const SceneConfig scene = scenes::two_buildings(6);
  const ScalarField g = sample_obstacle(scene.obstacle, scene.grid);
  std::ostringstream out;
  write_vtk(out, g, "g");
  std::istringstream in(out.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_GE(lines.size(), 10u + g.size());
  EXPECT_EQ(lines[0], "# vtk DataFile Version 3.0");
  EXPECT_EQ(lines[2], "ASCII");
  EXPECT_EQ(lines[3], "DATASET STRUCTURED_POINTS");
  EXPECT_EQ(lines[4], "DIMENSIONS 6 6 6");
  EXPECT_EQ(lines[5].rfind("ORIGIN -4 -3 0", 0), 0u);
  EXPECT_EQ(lines[6], "SPACING 2 2 1");
  EXPECT_EQ(lines[7], "POINT_DATA 216");
  EXPECT_EQ(lines[8], "SCALARS g double 1");
  EXPECT_EQ(lines[9], "LOOKUP_TABLE default");
  // x varies fastest in the file; the grid is row-major with x slowest.
  EXPECT_EQ(std::stod(lines[10 + 1]), g.at(Index{1, 0, 0}));
  EXPECT_EQ(std::stod(lines[10 + 6]), g.at(Index{0, 1, 0}));
  EXPECT_EQ(std::stod(lines[10 + 36]), g.at(Index{0, 0, 1}));
}

TEST(FieldFormatName, ParseAndExtension) {
  EXPECT_EQ(parse_field_format("text"), FieldFormat::text);
  EXPECT_EQ(parse_field_format("vtk-ascii"), FieldFormat::vtk_ascii);
  EXPECT_EQ(extension(FieldFormat::vtk_ascii), ".vtk");
  EXPECT_THROW(parse_field_format("hdf5"), ConfigError);
}

TEST(SceneConfig, ShippedScenesAreCanonical) {
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(STARVIS_SCENES_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++seen;
    const std::string text = read_all(entry.path());
    const SceneConfig scene = parse_scene(text, entry.path().parent_path());
    EXPECT_EQ(serialize_scene(scene), text) << entry.path();
    const std::string again = serialize_scene(parse_scene(serialize_scene(scene), entry.path().parent_path()));
    EXPECT_EQ(again, text);
  }
  EXPECT_GE(seen, 5);
}

TEST(SceneConfig, BuiltInScenesRoundTrip) {
  for (const SceneConfig& scene : {scenes::cone(17), scenes::four_obstacles(17), scenes::two_buildings(9),
                                   scenes::wall(17), scenes::abs_1d(9)}) {
    const std::string text = serialize_scene(scene);
    const SceneConfig back = parse_scene(text);
    EXPECT_EQ(serialize_scene(back), text);
    const ScalarField a = sample_obstacle(scene.obstacle, scene.grid);
    const ScalarField b = sample_obstacle(back.obstacle, back.grid);
    EXPECT_EQ(testing::values_of(a), testing::values_of(b));
  }
}

TEST(SceneConfig, CustomSemantics) {
  const SceneConfig scene = parse_scene(R"({
    "grid": {"lo": [-1, -1], "hi": [1, 1], "n": [9, 9]},
    "obstacle": {"constant": 0},
    "viewpoints": [[0, 0], [0.5, 0.5], [-0.5, 0.5]],
    "semantics": {"min": [{"view": 0}, {"at_least": {"k": 2, "of": [{"view": 1}, {"view": 2}, {"view": 0}]}}]}
  })");
  EXPECT_EQ(scene.semantics, Semantics::custom);
  const double v[] = {1.0, -1.0, 0.5};
  EXPECT_EQ(scene.composition().evaluate(v), 0.5);
}

TEST(SceneConfig, ParseErrorReportsLineAndColumn) {
  try {
    parse_scene("{\n  \"grid\": ,\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 11u);
  }
}

TEST(SceneConfig, ConfigErrorsNameTheField) {
  auto field_of = [](const std::string& text) -> std::string {
    try {
      parse_scene(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return "<none>";
  };
  const std::string grid = R"("grid": {"lo": [-1, -1], "hi": [1, 1], "n": [9, 9]})";
  EXPECT_EQ(field_of("{" + grid + R"(, "obstacle": {"constant": 0}, "viewpoints": [[2, 0]]})"), "viewpoints[0]");
  EXPECT_EQ(field_of("{" + grid + R"(, "obstacle": {"cone": {"apex": [0]}}, "viewpoints": [[0, 0]]})"),
            "obstacle.cone.apex");
  EXPECT_EQ(field_of("{" + grid + R"(, "obstacle": {"constant": 0}, "viewpoints": [[0, 0]], "colour": 1})"),
            "colour");
  EXPECT_EQ(field_of("{" + grid + R"(, "obstacle": {"constant": 0}, "viewpoints": [[0, 0]], "envelope": "mid"})"),
            "envelope");
  EXPECT_EQ(field_of(R"({"grid": {"lo": [-1], "hi": [1, 1], "n": [9]}})"), "grid.hi");
}

TEST(SceneConfig, LoadMissingFile) { EXPECT_THROW(load_scene("/nonexistent/scene.json"), IoError); }

int run_cli(const std::string& args) {
  const std::string cmd = std::string(STARVIS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch_dir("cli");
  {
    std::ofstream(dir / "bad_syntax.json") << "{ \"grid\": [1, }";
    std::ofstream(dir / "bad_value.json") << R"({"grid": {"lo": [-1, -1], "hi": [1, 1], "n": [9, 9]},
      "obstacle": {"constant": 0.5}, "viewpoints": [[3, 0]]})";
    std::ofstream(dir / "constant.json") << R"({"grid": {"lo": [-1, -1], "hi": [1, 1], "n": [9, 9]},
      "obstacle": {"constant": 0.5}, "viewpoints": [[0, 0]], "alpha": 0.5})";
  }
  const std::string out = " --out " + (dir / "out").string();
  EXPECT_EQ(run_cli(""), 1);
  EXPECT_EQ(run_cli("solve"), 1);
  EXPECT_EQ(run_cli("solve " + (dir / "bad_syntax.json").string() + out), 2);
  EXPECT_EQ(run_cli("solve " + (dir / "bad_value.json").string() + out), 3);
  EXPECT_EQ(run_cli("solve " + (dir / "missing.json").string() + out), 4);
  EXPECT_EQ(run_cli("solve " + (dir / "constant.json").string() + out), 0);

  // Constant obstacle at its own level: everything is visible.
  const ScalarField mask = import_field(dir / "out" / "visible.txt");
  for (double v : mask.values()) EXPECT_EQ(v, 1.0);
  const ScalarField u = import_field(dir / "out" / "solution.txt");
  for (double v : u.values()) EXPECT_EQ(v, 0.5);

  EXPECT_EQ(run_cli("solve " + (dir / "constant.json").string() + out + " --alpha 0.4"), 0);
  const ScalarField hidden = import_field(dir / "out" / "visible.txt");
  for (double v : hidden.values()) EXPECT_EQ(v, 0.0);

  // Output directory blocked by a regular file.
  std::ofstream(dir / "blocker") << "x";
  EXPECT_EQ(run_cli("solve " + (dir / "constant.json").string() + " --out " + (dir / "blocker").string()), 4);
  fs::remove_all(dir);
}

TEST(Cli, ConvergeAndMultiview) {
  const fs::path dir = scratch_dir("cli_runs");
  const std::string out = " --out " + dir.string();
  EXPECT_EQ(run_cli("converge " + std::string(STARVIS_SCENES_DIR) + "/cone.json --N 32,64" + out), 0);
  const std::string csv = read_all(dir / "convergence.csv");
  EXPECT_EQ(csv.rfind("N,h,error,order\n32,", 0), 0u);
  EXPECT_EQ(run_cli("converge " + std::string(STARVIS_SCENES_DIR) + "/cone.json --N 64,32" + out), 3);
  EXPECT_EQ(run_cli("multiview " + std::string(STARVIS_SCENES_DIR) + "/wall.json --format vtk-ascii" + out), 0);
  EXPECT_TRUE(fs::exists(dir / "all.vtk"));
  EXPECT_TRUE(fs::exists(dir / "solution_1.vtk"));
  fs::remove_all(dir);
}

}  // namespace
}  // namespace starvis
