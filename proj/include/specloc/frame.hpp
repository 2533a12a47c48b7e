#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "specloc/linalg.hpp"

namespace specloc {

/// Everything derived from (A, k, θ) that the order-k inequality needs.
///
/// With U the eigenvector matrix of H(e^{iθ}A) and Y = U*·S(e^{iθ}A)·U
/// partitioned after the first k rows/columns:
///
///     Y = [ y_k   -v_k* ]
///         [ v_k    ...  ]
///
/// kappa = σ₁(v_k)² and delta_next = δ_{k+1}.
struct SpectralFrame {
  std::size_t k = 0;
  double theta = 0.0;
  ComplexMatrix a_rot;
  std::vector<double> deltas;
  ComplexMatrix u;
  ComplexMatrix y;
  std::vector<double> delta_k_block;
  ComplexMatrix y_k;
  ComplexMatrix v_k;
  double kappa = 0.0;
  double delta_next = 0.0;
  /// δ_k and δ_{k+1} coincide to rounding; the basis of their joint
  /// eigenspace, and hence v_k, is not unique.
  bool degenerate = false;
  /// ‖A‖_max of the unrotated input; sets tolerance scales downstream.
  double scale = 0.0;

  std::size_t n() const noexcept { return deltas.size(); }
};

/// Throws ParameterError unless 1 ≤ k ≤ n-1, DimensionError for non-square A.
SpectralFrame build_frame(const ComplexMatrix& a, std::size_t k, double theta);

/// W_k = diag(δ₁..δ_k) + y_k - (s+it)·I_k.
ComplexMatrix w_matrix(const SpectralFrame& frame, double s, double t);

/// Per-invocation memo of frames keyed on (matrix content, k, θ). Safe for
/// concurrent use; entries are deterministic so racing inserts are harmless.
class FrameCache {
 public:
  std::shared_ptr<const SpectralFrame> get(const ComplexMatrix& a, std::size_t k, double theta);
  std::size_t size() const;

  static std::uint64_t hash(const ComplexMatrix& a) noexcept;

 private:
  using Key = std::tuple<std::uint64_t, std::size_t, std::uint64_t>;
  mutable std::mutex mu_;
  std::map<Key, std::shared_ptr<const SpectralFrame>> frames_;
};

}  // namespace specloc
