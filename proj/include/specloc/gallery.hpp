#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "specloc/linalg.hpp"

namespace specloc {

enum class GalleryName {
  toeplitz_eq1,
  a_tilde,
  a_hat,
  pair_A,
  pair_B,
  matrix_C,
  matrix_F,
  matrix_A1,
  frank,
  random_real,
  random_complex,
};

/// A named constructor plus its parameters. Missing parameters take the
/// defaults listed by gallery_entries().
struct MatrixSpec {
  GalleryName name = GalleryName::a_tilde;
  std::map<std::string, double> params;
};

struct GalleryEntry {
  GalleryName name;
  std::string_view id;
  std::vector<std::pair<std::string, double>> defaults;
  std::string_view summary;
};

const std::vector<GalleryEntry>& gallery_entries();
std::string_view to_string(GalleryName name);

/// Parses "name" or "name:key=value,key=value" (bare values fill the
/// parameters in their listed order). Throws ParameterError.
MatrixSpec parse_matrix_spec(std::string_view text);

ComplexMatrix build_matrix(const MatrixSpec& spec);

/// Entries uniform in [-1, 1) (real and imaginary parts independently for
/// complex). Uses std::mt19937_64 and the top 53 bits of each draw, so the
/// stream is identical on every conforming platform.
ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed, bool complex_entries);

// ---------------------------------------------------------------------------
// Diagonal-case analytics (W_k diagonal, i.e. y_k = 0 and U = I).
// deltas are δ₁ ≥ … ≥ δ_{k+1}; indices j returned below are 1-based.

/// ε_j = √((δ_{j+1}-δ_{k+1})(δ_j-δ_{j+1})) for j < k, and ε_k = (δ_k-δ_{k+1})/2.
std::vector<double> epsilon_thresholds(std::span<const double> deltas, std::size_t k);

/// Real t = 0 crossings s_∓ of the region-j cubic, or nothing when
/// eps > (δ_j - δ_last)/2.
std::optional<std::pair<double, double>> s_pm(double delta_j, double delta_last, double eps);

/// Index j whose diagonal entry (δ_j - s)·∏_{r≠j}|δ_r - λ|² is the largest
/// eigenvalue of M_k. Ties go to the smaller index.
std::size_t region_index(std::span<const double> deltas, std::size_t k, double s, double t);

/// δ₁..δ_{k+1} making every ε_j equal (δ_k - δ_{k+1})/2.
std::vector<double> simultaneous_merge_deltas(double delta_last, double delta_k, std::size_t k);

/// ε²(δ_j - s) - [(δ_j - s)² + t²](s - δ_{k+1}) with j = region_index.
double diagonal_gamma_prediction(std::span<const double> deltas, std::size_t k, double eps, double s,
                                 double t);

/// Abscissas where the region-j and region-i cubics meet on their separating
/// hyperbola, i.e. roots of (δ_j+δ_i-2s)(s-δ_last) = ε² with (δ_j-s)(δ_i-s) ≥ 0.
std::optional<std::pair<double, double>> hyperbola_meeting_abscissas(double delta_j, double delta_i,
                                                                     double delta_last, double eps);

struct HyperbolaCoefficients {
  std::size_t j = 0;  // 1-based
  std::size_t i = 0;
  double centre = 0.0;    // (δ_j + δ_i)/2
  double half_gap = 0.0;  // (δ_j - δ_i)/2
};

struct DiagonalCaseReport {
  std::vector<double> deltas;
  double eps = 0.0;
  std::vector<double> epsilon_thresholds;
  std::vector<std::optional<double>> s_plus;
  std::vector<std::optional<double>> s_minus;
  std::vector<HyperbolaCoefficients> region_boundaries;
};

DiagonalCaseReport diagonal_case_report(std::span<const double> deltas, std::size_t k, double eps);

}  // namespace specloc
