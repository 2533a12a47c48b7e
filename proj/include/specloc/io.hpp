#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "specloc/curve_trace.hpp"
#include "specloc/envelope.hpp"
#include "specloc/linalg.hpp"

namespace specloc {

/// Text matrix format: a header line "n m", then n lines of m whitespace
/// separated tokens, each `re` or `re,im`. Blank lines are skipped. Throws
/// ParseError with the 1-based line/column of the first bad token.
ComplexMatrix parse_matrix_text(std::string_view text);
/// As parse_matrix_text; IoError when the file cannot be read.
ComplexMatrix parse_matrix_file(const std::filesystem::path& path);

/// Inverse of parse_matrix_text with round-trip exact numbers.
void write_matrix_text(std::ostream& os, const ComplexMatrix& a);

/// Shortest decimal that parses back to exactly `v`.
std::string format_exact(double v);

/// Everything one SVG figure shows. Curves are drawn in order over the
/// rasters; eigenvalues go on top as small squares.
struct Figure {
  Window view;
  std::size_t width = 800;
  std::size_t height = 600;
  std::string title;
  std::vector<RegionRaster> rasters;
  std::vector<CurveSet> curves;
  /// Dashed vertical lines s = value.
  std::vector<double> vertical_lines;
  std::vector<cplx> eigenvalues;
};

void write_svg(std::ostream& os, const Figure& fig);

/// Header `curve_id,kind,s,t`; curve ids run across all sets in order.
void write_csv(std::ostream& os, const std::vector<CurveSet>& sets);

/// Binary P5, 255 = member, row 0 = t_max.
void write_pgm(std::ostream& os, const RegionRaster& raster);

}  // namespace specloc
