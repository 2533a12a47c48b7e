#pragma once

#include "specloc/frame.hpp"
#include "specloc/linalg.hpp"

namespace specloc {

/// One evaluation of the order-k eigenvalue inequality at λ = s + it:
///
///     lhs = |det W_k|² (s - δ_{k+1})
///     rhs = κ · λ_max(M_k)
///     g   = rhs - lhs
///
/// g ≥ 0 is the allowed side; every eigenvalue of the rotated matrix lies there.
/// For g_min_value the λ_min of M_k is used and stored in `lambda_mk`.
struct IneqValue {
  double g = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double lambda_mk = 0.0;
  cplx det_wk{};
};

/// M_k = H(det W_k · adj(W_k*)), Hermitian k×k.
ComplexMatrix mk_matrix(const SpectralFrame& frame, double s, double t);

IneqValue g_value(const SpectralFrame& frame, double s, double t);
IneqValue g_min_value(const SpectralFrame& frame, double s, double t);

/// Cubic form for k = 1, built from α = Im(u₁*S u₁) and K₁ = ‖S u₁‖² - α².
double cubic_g1(const SpectralFrame& frame, double s, double t);

/// Closed form for k = 2 from α, β, γ and the Gram-radical expression of K₂.
double explicit_g2(const SpectralFrame& frame, double s, double t);

/// 4|det W₂|⁴(s-δ₃)² - 4K₂·tr(M₂)·|det W₂|²(s-δ₃) + 4K₂²·det(M₂).
/// Vanishes on both Γ₂ and γ₂ (it equals 4·g·g_min).
double union_poly_value(const SpectralFrame& frame, double s, double t);

struct CrossingCondition {
  bool holds = false;
  double lhs = 0.0;  // ‖v₁‖²
  double rhs = 0.0;  // K₂(δ₁-δ₂)/(δ₁+δ₂-2δ₃)
};

/// Sufficient condition, at s = (δ₁+δ₂)/2, for the k=1 curve to be tighter than
/// the k=2 curve. Only defined for real matrices with n ≥ 3.
CrossingCondition crossing_condition(const ComplexMatrix& a);

/// Absolute slack 1e-9·(1+‖A‖_max)^{2k+1} applied to g when deciding membership.
double membership_tolerance(const SpectralFrame& frame);

}  // namespace specloc
