#include "specloc/oracle.hpp"

#include <Eigen/Eigenvalues>

#include "specloc/errors.hpp"

namespace specloc {

std::vector<cplx> eigenvalues(const ComplexMatrix& a) {
  if (!a.square()) throw DimensionError("eigenvalues: matrix must be square");
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  if (solver.info() != Eigen::Success) throw ShapeError("eigenvalues: solver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace specloc
