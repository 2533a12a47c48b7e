#include "specloc/inequality.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "specloc/errors.hpp"

namespace specloc {

namespace {

// Stack storage for the small k×k work matrices; heap beyond k = 8.
class Scratch {
 public:
  explicit Scratch(std::size_t count) {
    if (count > stack_.size()) heap_.resize(count);
    span_ = count > stack_.size() ? std::span<cplx>(heap_) : std::span<cplx>(stack_.data(), count);
  }
  std::span<cplx> get() noexcept { return span_; }

 private:
  std::array<cplx, 64> stack_{};
  std::vector<cplx> heap_;
  std::span<cplx> span_;
};

// Fills `m` with M_k at (s, t) and returns det W_k.
cplx fill_mk(const SpectralFrame& f, double s, double t, std::span<cplx> m) {
  const std::size_t k = f.k;
  Scratch w_buf(k * k);
  Scratch adj_buf(k * k);
  auto w = w_buf.get();
  auto adj = adj_buf.get();
  const cplx lambda{s, t};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) w[i * k + j] = f.y_k(i, j);
  for (std::size_t i = 0; i < k; ++i) w[i * k + i] += f.delta_k_block[i] - lambda;

  const cplx d = kernels::det_small(w, k);
  kernels::adjugate_small(w, k, adj);
  // M_ij = ½(d̄·adj(W)_ij + d·conj(adj(W)_ji))
  for (std::size_t i = 0; i < k; ++i) {
    m[i * k + i] = (std::conj(d) * adj[i * k + i]).real();
    for (std::size_t j = i + 1; j < k; ++j) {
      const cplx z = 0.5 * (std::conj(d) * adj[i * k + j] + d * std::conj(adj[j * k + i]));
      m[i * k + j] = z;
      m[j * k + i] = std::conj(z);
    }
  }
  return d;
}

IneqValue evaluate(const SpectralFrame& f, double s, double t, Extreme which) {
  const std::size_t k = f.k;
  Scratch m_buf(k * k);
  auto m = m_buf.get();
  IneqValue v;
  v.det_wk = fill_mk(f, s, t, m);
  double lo = 0.0;
  double hi = 0.0;
  kernels::extreme_eigs_hermitian(m, k, lo, hi);
  v.lambda_mk = which == Extreme::max ? hi : lo;
  v.lhs = std::norm(v.det_wk) * (s - f.delta_next);
  v.rhs = f.kappa * v.lambda_mk;
  v.g = v.rhs - v.lhs;
  return v;
}

ComplexMatrix column(const ComplexMatrix& m, std::size_t c) { return m.block(0, c, m.rows(), 1); }

cplx inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  cplx acc{};
  for (std::size_t i = 0; i < x.rows(); ++i) acc += std::conj(x(i, 0)) * y(i, 0);
  return acc;
}

}  // namespace

ComplexMatrix mk_matrix(const SpectralFrame& frame, double s, double t) {
  ComplexMatrix m(frame.k, frame.k);
  fill_mk(frame, s, t, m.data());
  return m;
}

IneqValue g_value(const SpectralFrame& frame, double s, double t) {
  return evaluate(frame, s, t, Extreme::max);
}

IneqValue g_min_value(const SpectralFrame& frame, double s, double t) {
  return evaluate(frame, s, t, Extreme::min);
}

double cubic_g1(const SpectralFrame& frame, double s, double t) {
  if (frame.k != 1) throw ParameterError("cubic_g1 requires a k=1 frame");
  const ComplexMatrix sk = skew_part(frame.a_rot);
  const ComplexMatrix u1 = column(frame.u, 0);
  const ComplexMatrix su1 = sk * u1;
  const double alpha = inner(u1, su1).imag();
  const double k1 = inner(su1, su1).real() - alpha * alpha;
  const double d1 = frame.deltas[0] - s;
  return k1 * d1 - (d1 * d1 + (alpha - t) * (alpha - t)) * (s - frame.deltas[1]);
}

double explicit_g2(const SpectralFrame& frame, double s, double t) {
  if (frame.k != 2) throw ParameterError("explicit_g2 requires a k=2 frame");
  const ComplexMatrix sk = skew_part(frame.a_rot);
  const ComplexMatrix u1 = column(frame.u, 0);
  const ComplexMatrix u2 = column(frame.u, 1);
  const ComplexMatrix su1 = sk * u1;
  const ComplexMatrix su2 = sk * u2;

  const double alpha = inner(u1, su1).imag();
  const double beta = inner(u2, su2).imag();
  const cplx gamma = inner(u2, su1);
  const double g2 = std::norm(gamma);
  const double n1 = inner(su1, su1).real();
  const double n2 = inner(su2, su2).real();
  const cplx cross = inner(su2, su1) + cplx{0.0, 1.0} * gamma * (alpha + beta);
  const double diff = n1 - n2 - alpha * alpha + beta * beta;
  const double k2 = 0.5 * (n1 + n2 - alpha * alpha - beta * beta - 2.0 * g2 +
                           std::sqrt(diff * diff + 4.0 * std::norm(cross)));

  const double d1 = frame.deltas[0] - s;
  const double d2 = frame.deltas[1] - s;
  const double a = alpha - t;
  const double b = beta - t;
  const double re_det = d1 * d2 - a * b + g2;
  const double im_det = d1 * b + d2 * a;
  const double det_sq = re_det * re_det + im_det * im_det;

  const double m1 = d1 * (d2 * d2 + b * b) + d2 * g2;
  const double m3 = d2 * (d1 * d1 + a * a) + d1 * g2;
  const double m2_sq = g2 * im_det * im_det;  // |iγ·im_det|²
  const double lmax = 0.5 * (m1 + m3 + std::sqrt((m1 - m3) * (m1 - m3) + 4.0 * m2_sq));
  return k2 * lmax - det_sq * (s - frame.deltas[2]);
}

double union_poly_value(const SpectralFrame& frame, double s, double t) {
  if (frame.k != 2) throw ParameterError("union_poly_value requires a k=2 frame");
  std::array<cplx, 4> m{};
  const cplx d = fill_mk(frame, s, t, m);
  const double tr = m[0].real() + m[3].real();
  const double det_m = m[0].real() * m[3].real() - std::norm(m[2]);
  const double l = std::norm(d) * (s - frame.delta_next);
  const double k2 = frame.kappa;
  return 4.0 * l * l - 4.0 * k2 * tr * l + 4.0 * k2 * k2 * det_m;
}

CrossingCondition crossing_condition(const ComplexMatrix& a) {
  if (!a.square() || a.rows() < 3) {
    throw DimensionError("crossing_condition needs a square matrix with n >= 3");
  }
  for (const auto& z : a.data())
    if (z.imag() != 0.0) throw ParameterError("crossing_condition is defined for real matrices");

  const SpectralFrame f = build_frame(a, 2, 0.0);
  const ComplexMatrix v1 = column(f.v_k, 0);
  const ComplexMatrix v2 = column(f.v_k, 1);
  const double n1 = inner(v1, v1).real();
  const double n2 = inner(v2, v2).real();
  const double k2 = 0.5 * (n1 + n2 + std::sqrt((n1 - n2) * (n1 - n2) + 4.0 * std::norm(inner(v2, v1))));
  const double denom = f.deltas[0] + f.deltas[1] - 2.0 * f.deltas[2];

  CrossingCondition c;
  c.lhs = n1;
  c.rhs = denom > 0.0 ? k2 * (f.deltas[0] - f.deltas[1]) / denom : 0.0;
  c.holds = c.lhs < c.rhs;
  return c;
}

double membership_tolerance(const SpectralFrame& frame) {
  return 1e-9 * std::pow(1.0 + frame.scale, static_cast<double>(2 * frame.k + 1));
}

}  // namespace specloc
