#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "specloc/gallery.hpp"
#include "specloc/kernels.hpp"

namespace specloc {

enum class Command { curve, envelope, numrange, gallery, check };
enum class Format { svg, csv, pgm, json };

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitViolation = 3;

struct RunConfig {
  Command command = Command::curve;
  std::optional<std::size_t> k;
  std::size_t theta_count = 120;
  std::size_t cols = 800;
  std::size_t rows = 600;
  std::optional<Window> window;
  std::optional<std::string> matrix_path;
  std::optional<MatrixSpec> gallery;
  /// Overrides the seed parameter of the random gallery matrices.
  std::optional<std::uint64_t> seed;
  /// Empty or "-" writes to the output stream passed to run().
  std::string out;
  /// Defaults to svg, or json for check.
  std::optional<Format> format;
  bool include_gamma_min = false;
  bool include_hyperbolas = false;
  /// Rotation used by `curve`.
  double theta = 0.0;
  /// Rank for the Λ_ℓ raster of `numrange`.
  std::optional<std::size_t> ell;
  Exec exec = Exec::parallel;
};

std::optional<Format> parse_format(std::string_view text);

/// Executes one command. Artifacts go to config.out (or `out`), diagnostics
/// to `err`. Returns one of the kExit* codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace specloc
