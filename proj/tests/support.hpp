#pragma once

// Independent reference computations for the tests. Everything here goes
// through Eigen's dense solvers rather than the library's own kernels.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <random>
#include <vector>

#include "specloc/frame.hpp"
#include "specloc/linalg.hpp"

namespace testsupport {

using specloc::ComplexMatrix;
using specloc::cplx;

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
  ComplexMatrix a(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
  return a;
}

/// Entries with real and imaginary parts uniform in [-1, 1).
inline ComplexMatrix random_complex(std::size_t n, std::mt19937_64& gen, bool real = false) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix a(n, n);
  for (auto& z : a.data()) {
    const double re = u(gen);
    z = {re, real ? 0.0 : u(gen)};
  }
  return a;
}

inline ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& gen) {
  const Eigen::MatrixXcd z = to_eigen(random_complex(n, gen));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  return from_eigen(qr.householderQ() * Eigen::MatrixXcd::Identity(n, n));
}

inline std::vector<double> hermitian_eigs_desc(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.rbegin(), v.rend());
  return v;
}

inline std::vector<cplx> general_eigs(const ComplexMatrix& a) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(a), false);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

struct ReferenceG {
  double g_max;
  double g_min;
};

/// g for the order-k inequality built from scratch: eigenvectors of H(e^{iθ}A)
/// from Eigen, W_k from its blocks, adj(W) = det(W)·W⁻¹, M_k by definition.
inline ReferenceG reference_g(const ComplexMatrix& a, std::size_t k, double theta, double s, double t) {
  const std::size_t n = a.rows();
  const Eigen::MatrixXcd ar = std::polar(1.0, theta) * to_eigen(a);
  const Eigen::MatrixXcd h = (ar + ar.adjoint()) / 2.0;
  const Eigen::MatrixXcd sk = (ar - ar.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  // Eigen sorts ascending; reverse to descending.
  Eigen::MatrixXcd u(n, n);
  Eigen::VectorXd d(n);
  for (std::size_t j = 0; j < n; ++j) {
    u.col(j) = es.eigenvectors().col(n - 1 - j);
    d(j) = es.eigenvalues()(n - 1 - j);
  }
  const Eigen::MatrixXcd y = u.adjoint() * sk * u;
  const Eigen::MatrixXcd v = y.block(k, 0, n - k, k);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
  const double kappa = svd.singularValues()(0) * svd.singularValues()(0);

  Eigen::MatrixXcd w = y.block(0, 0, k, k);
  for (std::size_t j = 0; j < k; ++j) w(j, j) += d(j) - cplx{s, t};
  const cplx det = w.determinant();
  // adj(W*) = adj(W)*, and det·adj(W*) = det·(det·W⁻¹)* = |det|²·W⁻*  when W is invertible.
  const Eigen::MatrixXcd adj = det * w.inverse();
  const Eigen::MatrixXcd p = det * adj.adjoint();
  const Eigen::MatrixXcd m = (p + p.adjoint()) / 2.0;
  const auto eig = hermitian_eigs_desc(m);
  const double lhs = std::norm(det) * (s - d(k));
  return {kappa * eig.front() - lhs, kappa * eig.back() - lhs};
}

}  // namespace testsupport
