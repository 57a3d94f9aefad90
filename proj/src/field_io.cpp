#include "starvis/field_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace starvis {

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

FieldFormat parse_field_format(std::string_view name) {
  if (name == "text") return FieldFormat::text;
  if (name == "vtk-ascii") return FieldFormat::vtk_ascii;
  throw ConfigError("format", "unknown field format '" + std::string(name) + "'");
}

std::string_view extension(FieldFormat format) { return format == FieldFormat::text ? ".txt" : ".vtk"; }

void write_text(std::ostream& out, const ScalarField& field) {
  const Grid& grid = field.grid();
  out << "dim " << grid.dim() << '\n' << 'n';
  for (int k = 0; k < grid.dim(); ++k) out << ' ' << grid.n()[k];
  out << "\nlo";
  for (int k = 0; k < grid.dim(); ++k) out << ' ' << format_real(grid.lo()[k]);
  out << "\nhi";
  for (int k = 0; k < grid.dim(); ++k) out << ' ' << format_real(grid.hi()[k]);
  out << '\n';
  for (double v : field.values()) out << format_real(v) << '\n';
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

template <class T>
T parse_number(const std::string& word, std::size_t line_no) {
  T v{};
  const auto res = std::from_chars(word.data(), word.data() + word.size(), v);
  if (res.ec != std::errc() || res.ptr != word.data() + word.size())
    throw ParseError(line_no, 1, "malformed number '" + word + "'");
  return v;
}

std::vector<std::string> expect_header(std::istream& in, std::size_t& line_no, const char* key, std::size_t count) {
  std::string line;
  ++line_no;
  if (!std::getline(in, line)) throw ParseError(line_no, 1, std::string("missing '") + key + "' line");
  auto words = split(line);
  if (words.empty() || words.front() != key) throw ParseError(line_no, 1, std::string("expected '") + key + "'");
  if (words.size() != count + 1)
    throw ParseError(line_no, 1, std::string("'") + key + "' needs " + std::to_string(count) + " values");
  words.erase(words.begin());
  return words;
}

}  // namespace

ScalarField read_text(std::istream& in) {
  std::size_t line_no = 0;
  const int dim = parse_number<int>(expect_header(in, line_no, "dim", 1).front(), line_no);
  if (dim < 1 || dim > kMaxDim) throw ParseError(line_no, 1, "dim must be 1, 2 or 3");
  Index n{};
  Vec lo{}, hi{};
  const auto nw = expect_header(in, line_no, "n", static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) n[k] = parse_number<int>(nw[k], line_no);
  const auto low = expect_header(in, line_no, "lo", static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) lo[k] = parse_number<double>(low[k], line_no);
  const auto hiw = expect_header(in, line_no, "hi", static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) hi[k] = parse_number<double>(hiw[k], line_no);

  Grid grid = [&] {
    try {
      return Grid(dim, lo, hi, n);
    } catch (const ConfigError& e) {
      throw ParseError(2, 1, e.what());
    }
  }();
  std::vector<double> values;
  values.reserve(grid.size());
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto words = split(line);
    if (words.empty()) continue;
    if (words.size() != 1) throw ParseError(line_no, 1, "expected one value per line");
    values.push_back(parse_number<double>(words.front(), line_no));
  }
  if (values.size() != grid.size())
    throw ParseError(line_no, 1,
                     "expected " + std::to_string(grid.size()) + " values, found " + std::to_string(values.size()));
  return ScalarField(std::move(grid), std::move(values));
}

void write_vtk(std::ostream& out, const ScalarField& field, std::string_view name) {
  const Grid& grid = field.grid();
  std::array<int, 3> dims{1, 1, 1};
  Vec origin{}, spacing{1.0, 1.0, 1.0};
  for (int k = 0; k < grid.dim(); ++k) {
    dims[k] = grid.n()[k];
    origin[k] = grid.lo()[k];
    spacing[k] = grid.spacing()[k];
  }
  out << "# vtk DataFile Version 3.0\n"
      << "starvis " << name << '\n'
      << "ASCII\n"
      << "DATASET STRUCTURED_POINTS\n"
      << "DIMENSIONS " << dims[0] << ' ' << dims[1] << ' ' << dims[2] << '\n'
      << "ORIGIN " << format_real(origin[0]) << ' ' << format_real(origin[1]) << ' ' << format_real(origin[2]) << '\n'
      << "SPACING " << format_real(spacing[0]) << ' ' << format_real(spacing[1]) << ' ' << format_real(spacing[2])
      << '\n'
      << "POINT_DATA " << grid.size() << '\n'
      << "SCALARS " << name << " double 1\n"
      << "LOOKUP_TABLE default\n";
  // VTK runs x fastest; our storage runs the last axis fastest.
  Index i{};
  for (i[2] = 0; i[2] < dims[2]; ++i[2])
    for (i[1] = 0; i[1] < dims[1]; ++i[1])
      for (i[0] = 0; i[0] < dims[0]; ++i[0]) out << format_real(field.at(i)) << '\n';
}

void export_field(const ScalarField& field, const std::filesystem::path& path, FieldFormat format,
                  std::string_view name) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  if (format == FieldFormat::text)
    write_text(out, field);
  else
    write_vtk(out, field, name);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

ScalarField import_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_text(in);
}

ScalarField mask_to_field(const Mask& mask) {
  ScalarField f(mask.grid);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = mask.values[i] ? 1.0 : 0.0;
  return f;
}

}  // namespace starvis
