#include "specloc/frame.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "specloc/errors.hpp"

namespace specloc {

SpectralFrame build_frame(const ComplexMatrix& a, std::size_t k, double theta) {
  if (!a.square() || a.rows() == 0) throw DimensionError("build_frame: matrix must be square");
  const std::size_t n = a.rows();
  if (k < 1 || k + 1 > n) {
    throw ParameterError("build_frame: k must lie in [1, n-1], got k=" + std::to_string(k) +
                         " for n=" + std::to_string(n));
  }
  if (!a.all_finite()) throw ParameterError("build_frame: non-finite matrix entry");

  SpectralFrame f;
  f.k = k;
  f.theta = theta;
  f.scale = a.max_abs();
  f.a_rot = std::polar(1.0, theta) * a;

  const ComplexMatrix h = hermitian_part(f.a_rot);
  const ComplexMatrix s = skew_part(f.a_rot);
  auto eig = eig_hermitian(h);
  f.deltas = std::move(eig.values);
  f.u = std::move(eig.vectors);

  ComplexMatrix y = f.u.adjoint() * s * f.u;
  // Rounding leaves y only approximately skew-Hermitian; restore it exactly.
  f.y = ComplexMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f.y(i, j) = 0.5 * (y(i, j) - std::conj(y(j, i)));

  f.delta_k_block.assign(f.deltas.begin(), f.deltas.begin() + static_cast<std::ptrdiff_t>(k));
  f.y_k = f.y.block(0, 0, k, k);
  f.v_k = f.y.block(k, 0, n - k, k);
  f.kappa = largest_singular_value_sq(f.v_k);
  f.delta_next = f.deltas[k];
  f.degenerate = std::abs(f.deltas[k - 1] - f.deltas[k]) <= 1e-12 * (1.0 + f.scale);
  return f;
}

ComplexMatrix w_matrix(const SpectralFrame& frame, double s, double t) {
  ComplexMatrix w = frame.y_k;
  const cplx lambda{s, t};
  // y_k has an exactly imaginary diagonal, so H(W_k) = diag(δ_j - s) exactly.
  for (std::size_t i = 0; i < frame.k; ++i) w(i, i) += frame.delta_k_block[i] - lambda;
  return w;
}

std::uint64_t FrameCache::hash(const ComplexMatrix& a) noexcept {
  // FNV-1a over the dimensions and the raw entry bits.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(a.rows());
  mix(a.cols());
  for (const auto& z : a.data()) {
    mix(std::bit_cast<std::uint64_t>(z.real()));
    mix(std::bit_cast<std::uint64_t>(z.imag()));
  }
  return h;
}

std::shared_ptr<const SpectralFrame> FrameCache::get(const ComplexMatrix& a, std::size_t k,
                                                     double theta) {
  const Key key{hash(a), k, std::bit_cast<std::uint64_t>(theta)};
  {
    std::lock_guard lock(mu_);
    if (auto it = frames_.find(key); it != frames_.end()) return it->second;
  }
  auto frame = std::make_shared<const SpectralFrame>(build_frame(a, k, theta));
  std::lock_guard lock(mu_);
  frames_[key] = frame;
  return frame;
}

std::size_t FrameCache::size() const {
  std::lock_guard lock(mu_);
  return frames_.size();
}

}  // namespace specloc
