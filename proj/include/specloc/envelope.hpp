#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "specloc/curve_trace.hpp"
#include "specloc/frame.hpp"
#include "specloc/kernels.hpp"

namespace specloc {

enum class RegionKind { envelope, numrange, rank_numrange };

/// Membership raster over the cells of `window`; row 0 is the t_max row.
struct RegionRaster {
  Window window;
  std::vector<std::uint8_t> bits;
  std::size_t theta_count = 0;
  /// Order k for envelopes, ℓ for rank numerical ranges.
  std::size_t order = 0;
  RegionKind kind = RegionKind::envelope;

  bool at(std::size_t row, std::size_t col) const { return bits[row * window.cols + col] != 0; }
  std::size_t count() const;
};

/// θ_m = 2πm/count, m = 0..count-1.
std::vector<double> uniform_thetas(std::size_t count);

/// Intersection over sampled θ of e^{-iθ}·E_k(e^{iθ}A), with the frames for
/// every θ built once and shared read-only.
class Envelope {
 public:
  /// With a cache, frames are looked up/stored there instead of rebuilt.
  Envelope(const ComplexMatrix& a, std::size_t k, std::vector<double> thetas,
           Exec exec = Exec::parallel, FrameCache* cache = nullptr);

  bool contains(cplx p) const;
  /// Smallest g over θ at the rotated point e^{iθ}p, and the θ attaining it.
  double min_g(cplx p, double* worst_theta = nullptr) const;

  std::size_t k() const noexcept { return k_; }
  const std::vector<double>& thetas() const noexcept { return thetas_; }
  const std::vector<SpectralFrame>& frames() const noexcept { return frames_; }
  double tolerance() const noexcept { return tol_; }

 private:
  std::size_t k_;
  std::vector<double> thetas_;
  std::vector<SpectralFrame> frames_;
  double tol_;
};

/// Intersection over sampled θ of the half-planes e^{-iθ}{Re z ≤ δ_ℓ(e^{iθ}A)}.
class RankRange {
 public:
  RankRange(const ComplexMatrix& a, std::size_t ell, std::vector<double> thetas,
            Exec exec = Exec::parallel);

  bool contains(cplx p) const;
  std::size_t ell() const noexcept { return ell_; }

 private:
  std::size_t ell_;
  std::vector<double> thetas_;
  std::vector<double> bounds_;
  double tol_;
};

bool envelope_membership(const ComplexMatrix& a, std::size_t k, std::span<const double> thetas,
                         cplx p);

RegionRaster envelope_raster(const ComplexMatrix& a, std::size_t k, std::size_t theta_count,
                             const Window& window, Exec exec = Exec::parallel,
                             FrameCache* cache = nullptr);

/// Boundary of F(A) through the support points u₁(θ)*·A·u₁(θ), u₁(θ) the top
/// eigenvector of H(e^{iθ}A). One closed polyline with `theta_count` vertices.
CurveSet numerical_range_boundary(const ComplexMatrix& a, std::size_t theta_count,
                                  Exec exec = Exec::parallel);

RegionRaster rank_numrange_raster(const ComplexMatrix& a, std::size_t ell,
                                  std::size_t theta_count, const Window& window,
                                  Exec exec = Exec::parallel);

/// Bounding box of the numerical range, widened by `margin` on each side.
Window numrange_window(const ComplexMatrix& a, double margin = 0.1, std::size_t cols = 800,
                       std::size_t rows = 600);

}  // namespace specloc
