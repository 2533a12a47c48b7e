#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specloc/frame.hpp"
#include "specloc/kernels.hpp"

namespace specloc {

struct Point {
  double s = 0.0;
  double t = 0.0;
};

/// Closed polylines do not repeat their first vertex.
struct Polyline {
  std::vector<Point> points;
  bool closed = false;
};

enum class CurveKind { gamma_max, gamma_min, union_curve, hyperbola, numrange };

std::string_view to_string(CurveKind kind);

struct CurveSet {
  std::vector<Polyline> polylines;
  Window window;
  CurveKind kind = CurveKind::gamma_max;
  std::vector<std::string> warnings;

  std::size_t closed_count() const;
};

/// Window covering the interesting part of Γ_k for `frame` together with the
/// bounding box of the numerical range of the rotated matrix.
Window auto_window(const SpectralFrame& frame, double margin = 0.25);

/// Marching squares over the node grid of `window`: {f = 0} as polylines with
/// linearly interpolated vertices. f ≥ 0 counts as inside. Saddle cells are
/// resolved by sampling f at the cell centre. Polylines are numbered in the
/// order a sequential scan over grid edges first meets them; open ones first.
CurveSet trace_implicit(const ScalarField& f, const Window& window,
                        CurveKind kind = CurveKind::gamma_max, Exec exec = Exec::parallel);

/// Γ_k: zero set of g_value.
CurveSet gamma_curve(const SpectralFrame& frame, const Window& window, Exec exec = Exec::parallel);
/// γ_k: zero set of g_min_value. Only defined by the theory for k = 2.
CurveSet gamma_min_curve(const SpectralFrame& frame, const Window& window,
                         Exec exec = Exec::parallel);
/// Γ₂ ∪ γ₂ through the polynomial form.
CurveSet union_curve(const SpectralFrame& frame, const Window& window, Exec exec = Exec::parallel);

/// Region boundaries of the diagonal case: for every pair j < i among
/// δ₁..δ_{k+1}, the hyperbola (s - (δ_j+δ_i)/2)² - t² = ((δ_j-δ_i)/2)².
CurveSet hyperbola_set(std::span<const double> deltas, std::size_t k, const Window& window,
                       Exec exec = Exec::parallel);

/// Even-odd containment test against a closed polyline.
bool encloses(const Polyline& ring, Point p);

}  // namespace specloc
