#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "starvis/grid.hpp"

namespace starvis {

enum class FieldFormat { text, vtk_ascii };

FieldFormat parse_field_format(std::string_view name);
std::string_view extension(FieldFormat format);

/// Self-describing text format:
///
///   dim D
///   n n1 ... nD
///   lo l1 ... lD
///   hi h1 ... hD
///
/// followed by one value per line in row-major order. Reals are written with
/// 17 significant digits so a write/read/write cycle is byte-identical.
void write_text(std::ostream& out, const ScalarField& field);
ScalarField read_text(std::istream& in);

/// Legacy VTK STRUCTURED_POINTS, ASCII. 2D fields get a single z layer.
void write_vtk(std::ostream& out, const ScalarField& field, std::string_view name);

void export_field(const ScalarField& field, const std::filesystem::path& path, FieldFormat format,
                  std::string_view name = "u");
ScalarField import_field(const std::filesystem::path& path);

/// Masks are exported as 0/1 fields.
ScalarField mask_to_field(const Mask& mask);

std::string format_real(double v);

}  // namespace starvis
