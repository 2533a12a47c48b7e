#include "specloc/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "specloc/errors.hpp"

namespace specloc {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw DimensionError("entry count does not match rows*cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix r = *this;
  for (auto& z : r.data_) z = std::conj(z);
  return r;
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                                   std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  ComplexMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("size mismatch in +");
  ComplexMatrix r = a;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("size mismatch in -");
  ComplexMatrix r = a;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("size mismatch in *");
  ComplexMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t l = 0; l < a.cols_; ++l) {
      const cplx x = a(i, l);
      if (x == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += x * b(l, j);
    }
  return r;
}

ComplexMatrix operator*(cplx z, const ComplexMatrix& a) {
  ComplexMatrix r = a;
  for (auto& x : r.data_) x *= z;
  return r;
}

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (!m.square() || m.rows() == 0) {
    throw DimensionError(std::string(what) + ": matrix must be square and non-empty");
  }
}

void require_hermitian(const ComplexMatrix& m, const char* what) {
  require_square(m, what);
  double dev = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
  if (!(dev <= kHermitianTol * (1.0 + m.max_abs()))) {
    throw ShapeError(std::string(what) + ": matrix is not Hermitian");
  }
}

/// Average of M and M*, making the input exactly Hermitian.
ComplexMatrix symmetrized(const ComplexMatrix& m) {
  ComplexMatrix h(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    h(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const cplx z = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

}  // namespace

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  require_square(a, "hermitian_part");
  const std::size_t n = a.rows();
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return h;
}

ComplexMatrix skew_part(const ComplexMatrix& a) {
  require_square(a, "skew_part");
  const std::size_t n = a.rows();
  ComplexMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(i, j) = 0.5 * (a(i, j) - std::conj(a(j, i)));
  return s;
}

namespace kernels {

namespace {

cplx det3(std::span<const cplx> m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

// Copies m without row `skip_r` and column `skip_c` into out ((n-1)×(n-1)).
void minor_of(std::span<const cplx> m, std::size_t n, std::size_t skip_r, std::size_t skip_c,
              std::span<cplx> out) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == skip_r) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == skip_c) continue;
      out[k++] = m[i * n + j];
    }
  }
}

cplx det_lu(std::vector<cplx> a, std::size_t n) {
  cplx det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    double best = std::abs(a[c * n + c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double v = std::abs(a[r * n + c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[c * n + j], a[piv * n + j]);
      det = -det;
    }
    const cplx d = a[c * n + c];
    det *= d;
    for (std::size_t r = c + 1; r < n; ++r) {
      const cplx f = a[r * n + c] / d;
      if (f == cplx{}) continue;
      for (std::size_t j = c + 1; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
    }
  }
  return det;
}

// Gauss-Jordan with partial pivoting. Returns false on exact singularity.
bool invert_gj(std::span<const cplx> m, std::size_t n, std::vector<cplx>& inv) {
  std::vector<cplx> a(m.begin(), m.end());
  inv.assign(n * n, cplx{});
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    double best = std::abs(a[c * n + c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double v = std::abs(a[r * n + c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return false;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a[c * n + j], a[piv * n + j]);
        std::swap(inv[c * n + j], inv[piv * n + j]);
      }
    }
    const cplx d = 1.0 / a[c * n + c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c * n + j] *= d;
      inv[c * n + j] *= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const cplx f = a[r * n + c];
      if (f == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a[r * n + j] -= f * a[c * n + j];
        inv[r * n + j] -= f * inv[c * n + j];
      }
    }
  }
  return true;
}

double norm1(std::span<const cplx> m, std::size_t n) {
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(m[i * n + j]);
    best = std::max(best, col);
  }
  return best;
}

void adjugate_cofactor(std::span<const cplx> m, std::size_t n, std::span<cplx> out) {
  std::vector<cplx> minor((n - 1) * (n - 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      minor_of(m, n, i, j, minor);
      const cplx c = det_small(minor, n - 1);
      // adj(M)_{ji} = (-1)^{i+j} det(M without row i, col j)
      out[j * n + i] = ((i + j) % 2 == 0) ? c : -c;
    }
}

}  // namespace

cplx det_small(std::span<const cplx> m, std::size_t n) {
  switch (n) {
    case 0:
      return 1.0;
    case 1:
      return m[0];
    case 2:
      return m[0] * m[3] - m[1] * m[2];
    case 3:
      return det3(m);
    default:
      return det_lu(std::vector<cplx>(m.begin(), m.end()), n);
  }
}

void adjugate_small(std::span<const cplx> m, std::size_t n, std::span<cplx> out) {
  switch (n) {
    case 1:
      out[0] = 1.0;
      return;
    case 2:
      out[0] = m[3];
      out[1] = -m[1];
      out[2] = -m[2];
      out[3] = m[0];
      return;
    case 3: {
      out[0] = m[4] * m[8] - m[5] * m[7];
      out[1] = m[2] * m[7] - m[1] * m[8];
      out[2] = m[1] * m[5] - m[2] * m[4];
      out[3] = m[5] * m[6] - m[3] * m[8];
      out[4] = m[0] * m[8] - m[2] * m[6];
      out[5] = m[2] * m[3] - m[0] * m[5];
      out[6] = m[3] * m[7] - m[4] * m[6];
      out[7] = m[1] * m[6] - m[0] * m[7];
      out[8] = m[0] * m[4] - m[1] * m[3];
      return;
    }
    case 4: {
      std::array<cplx, 9> minor{};
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
          minor_of(m, 4, i, j, minor);
          const cplx c = det3(minor);
          out[j * 4 + i] = ((i + j) % 2 == 0) ? c : -c;
        }
      return;
    }
    default:
      break;
  }
  // Larger sizes: det·inverse unless the inverse is untrustworthy.
  std::vector<cplx> inv;
  if (invert_gj(m, n, inv) && norm1(m, n) * norm1(inv, n) <= 1e12) {
    const cplx d = det_small(m, n);
    for (std::size_t i = 0; i < n * n; ++i) out[i] = d * inv[i];
    return;
  }
  adjugate_cofactor(m, n, out);
}

void jacobi_hermitian(std::span<cplx> a, std::size_t n, std::span<cplx> v) {
  const bool want_vectors = !v.empty();
  if (want_vectors) {
    std::fill(v.begin(), v.end(), cplx{});
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  }
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = a[i * n + i].real();
  if (n < 2) return;

  double frob2 = 0.0;
  for (std::size_t i = 0; i < n * n; ++i) frob2 += std::norm(a[i]);
  if (frob2 == 0.0) return;

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off2 = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off2 += std::norm(a[p * n + q]);
    if (off2 <= 1e-34 * frob2) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a[p * n + q];
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a[p * n + p].real();
        const double aqq = a[q * n + q].real();
        if (sweep > 3 && std::abs(app) + 100.0 * mag == std::abs(app) &&
            std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
          a[p * n + q] = 0.0;
          a[q * n + p] = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * mag);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx e = apq / mag;
        const cplx ebar = std::conj(e);

        // A <- A G with G = [[c, s], [-s·ē, c·ē]] on (p, q)
        for (std::size_t r = 0; r < n; ++r) {
          const cplx x = a[r * n + p];
          const cplx y = a[r * n + q];
          a[r * n + p] = c * x - s * ebar * y;
          a[r * n + q] = s * x + c * ebar * y;
        }
        // A <- G* A
        for (std::size_t r = 0; r < n; ++r) {
          const cplx x = a[p * n + r];
          const cplx y = a[q * n + r];
          a[p * n + r] = c * x - s * e * y;
          a[q * n + r] = s * x + c * e * y;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        a[p * n + p] = app - t * mag;
        a[q * n + q] = aqq + t * mag;
        if (want_vectors) {
          for (std::size_t r = 0; r < n; ++r) {
            const cplx x = v[r * n + p];
            const cplx y = v[r * n + q];
            v[r * n + p] = c * x - s * ebar * y;
            v[r * n + q] = s * x + c * ebar * y;
          }
        }
      }
    }
  }
}

void extreme_eigs_hermitian(std::span<cplx> a, std::size_t n, double& lo, double& hi) {
  if (n == 1) {
    lo = hi = a[0].real();
    return;
  }
  if (n == 2) {
    const double m1 = a[0].real();
    const double m3 = a[3].real();
    const double r = std::sqrt((m1 - m3) * (m1 - m3) + 4.0 * std::norm(a[2]));
    const double tr = m1 + m3;
    const double det = m1 * m3 - std::norm(a[2]);
    // The root with the larger modulus comes from the sum; the other from det.
    if (tr >= 0.0) {
      hi = 0.5 * (tr + r);
      lo = hi != 0.0 ? det / hi : 0.5 * (tr - r);
    } else {
      lo = 0.5 * (tr - r);
      hi = lo != 0.0 ? det / lo : 0.5 * (tr + r);
    }
    return;
  }
  jacobi_hermitian(a, n, {});
  lo = hi = a[0].real();
  for (std::size_t i = 1; i < n; ++i) {
    lo = std::min(lo, a[i * n + i].real());
    hi = std::max(hi, a[i * n + i].real());
  }
}

}  // namespace kernels

HermitianEigenDecomposition eig_hermitian(const ComplexMatrix& h_in) {
  require_hermitian(h_in, "eig_hermitian");
  const std::size_t n = h_in.rows();
  ComplexMatrix a = symmetrized(h_in);
  ComplexMatrix v(n, n);
  kernels::jacobi_hermitian(a.data(), n, v.data());

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });

  HermitianEigenDecomposition out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    out.values[c] = a(src, src).real();
    std::size_t lead = 0;
    for (std::size_t r = 1; r < n; ++r)
      if (std::abs(v(r, src)) > std::abs(v(lead, src))) lead = r;
    const double lead_abs = std::abs(v(lead, src));
    const cplx phase = lead_abs > 0.0 ? std::conj(v(lead, src)) / lead_abs : cplx{1.0};
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, src) * phase;
    out.vectors(lead, c) = std::abs(out.vectors(lead, c));
  }
  return out;
}

std::vector<double> eigvals_hermitian(const ComplexMatrix& h_in) {
  require_hermitian(h_in, "eigvals_hermitian");
  const std::size_t n = h_in.rows();
  ComplexMatrix a = symmetrized(h_in);
  kernels::jacobi_hermitian(a.data(), n, {});
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = a(i, i).real();
  std::sort(vals.begin(), vals.end(), std::greater<>());
  return vals;
}

cplx determinant(const ComplexMatrix& m) {
  require_square(m, "determinant");
  return kernels::det_small(m.data(), m.rows());
}

ComplexMatrix adjugate(const ComplexMatrix& m) {
  require_square(m, "adjugate");
  ComplexMatrix out(m.rows(), m.cols());
  kernels::adjugate_small(m.data(), m.rows(), out.data());
  return out;
}

ComplexMatrix inverse(const ComplexMatrix& m) {
  require_square(m, "inverse");
  std::vector<cplx> inv;
  if (!kernels::invert_gj(m.data(), m.rows(), inv)) throw ShapeError("inverse: singular matrix");
  return ComplexMatrix(m.rows(), m.cols(), std::move(inv));
}

double largest_singular_value_sq(const ComplexMatrix& v) {
  if (v.rows() == 0 || v.cols() == 0) return 0.0;
  if (v.cols() == 1) {
    double s = 0.0;
    for (const auto& z : v.data()) s += std::norm(z);
    return s;
  }
  ComplexMatrix gram = v.adjoint() * v;
  double lo = 0.0;
  double hi = 0.0;
  ComplexMatrix g = symmetrized(gram);
  kernels::extreme_eigs_hermitian(g.data(), g.rows(), lo, hi);
  return std::max(hi, 0.0);
}

double lambda_extreme_hermitian(const ComplexMatrix& m, Extreme which) {
  require_hermitian(m, "lambda_extreme_hermitian");
  ComplexMatrix a = symmetrized(m);
  double lo = 0.0;
  double hi = 0.0;
  kernels::extreme_eigs_hermitian(a.data(), a.rows(), lo, hi);
  return which == Extreme::max ? hi : lo;
}

}  // namespace specloc
