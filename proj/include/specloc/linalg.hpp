#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace specloc {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Values are immutable once shared; all
/// arithmetic returns new matrices.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  /// Row-wise initializer, e.g. {{1, 2}, {3, {0, 1}}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const cplx> data() const noexcept { return data_; }
  std::span<cplx> data() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  /// Largest entry modulus, ‖·‖_max.
  double max_abs() const noexcept;
  bool all_finite() const noexcept;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(cplx z, const ComplexMatrix& a);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Eigen-decomposition of a Hermitian matrix. `values` are non-increasing,
/// `vectors` holds the matching orthonormal eigenvectors as columns.
struct HermitianEigenDecomposition {
  std::vector<double> values;
  ComplexMatrix vectors;
};

enum class Extreme { max, min };

/// (A + A*)/2, exactly Hermitian.
ComplexMatrix hermitian_part(const ComplexMatrix& a);
/// (A - A*)/2, exactly skew-Hermitian.
ComplexMatrix skew_part(const ComplexMatrix& a);

/// Cyclic Jacobi. Eigenvalues descending; every eigenvector is scaled so its
/// first largest-modulus component is real positive.
HermitianEigenDecomposition eig_hermitian(const ComplexMatrix& h);
/// Eigenvalues only, descending.
std::vector<double> eigvals_hermitian(const ComplexMatrix& h);

cplx determinant(const ComplexMatrix& m);
/// Transpose of the cofactor matrix; adj of a 1x1 matrix is [[1]].
ComplexMatrix adjugate(const ComplexMatrix& m);
/// Inverse by partially pivoted Gauss-Jordan. Throws ShapeError if singular.
ComplexMatrix inverse(const ComplexMatrix& m);

/// σ₁(V)² = λ_max(V*V). Zero for a matrix without rows.
double largest_singular_value_sq(const ComplexMatrix& v);
double lambda_extreme_hermitian(const ComplexMatrix& m, Extreme which);

/// Relative Hermitian-ness tolerance used by eig_hermitian and friends.
inline constexpr double kHermitianTol = 1e-12;

namespace kernels {

// Allocation-light routines over raw row-major n×n storage. The public
// ComplexMatrix functions above are thin wrappers around these; the inequality
// evaluator calls them directly from its inner loop.

cplx det_small(std::span<const cplx> m, std::size_t n);
/// Writes adj(m) into `out` (n×n).
void adjugate_small(std::span<const cplx> m, std::size_t n, std::span<cplx> out);
/// In-place Jacobi on Hermitian `a`; eigenvalues end up on the diagonal.
/// When `v` is non-empty it must be n×n and receives the accumulated rotations.
void jacobi_hermitian(std::span<cplx> a, std::size_t n, std::span<cplx> v);
/// Both extreme eigenvalues of a Hermitian n×n matrix; `a` is used as scratch.
void extreme_eigs_hermitian(std::span<cplx> a, std::size_t n, double& lo, double& hi);

}  // namespace kernels

}  // namespace specloc
