#include "specloc/curve_trace.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "specloc/errors.hpp"
#include "specloc/inequality.hpp"

namespace specloc {

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::gamma_max:
      return "gamma_max";
    case CurveKind::gamma_min:
      return "gamma_min";
    case CurveKind::union_curve:
      return "union";
    case CurveKind::hyperbola:
      return "hyperbola";
    case CurveKind::numrange:
      return "numrange";
  }
  return "unknown";
}

std::size_t CurveSet::closed_count() const {
  return static_cast<std::size_t>(
      std::count_if(polylines.begin(), polylines.end(), [](const Polyline& p) { return p.closed; }));
}

Window auto_window(const SpectralFrame& frame, double margin) {
  const double d1 = frame.deltas.front();
  const double dn = frame.deltas.back();
  const double span = d1 - dn;
  const double root_kappa = std::sqrt(frame.kappa);

  // Im of the numerical range is bounded by the spectrum of -i·S.
  const ComplexMatrix im_part = cplx{0.0, -1.0} * skew_part(frame.a_rot);
  const auto im_eigs = eigvals_hermitian(im_part);
  const double im_radius = std::max(std::abs(im_eigs.front()), std::abs(im_eigs.back()));

  Window w;
  w.s_min = std::min(frame.delta_next, dn) - margin * span;
  w.s_max = d1 + margin * span + root_kappa;
  if (w.s_max - w.s_min < 1e-9 * (1.0 + std::abs(d1))) {
    w.s_min -= 1.0;
    w.s_max += 1.0;
  }
  const double half = std::max({root_kappa + span, 1.0, im_radius}) * (1.0 + margin);
  w.t_min = -half;
  w.t_max = half;
  return w;
}

namespace {

struct Grid {
  const Window& w;
  std::size_t n_h;  // horizontal edges: rows × (cols-1)

  explicit Grid(const Window& win) : w(win), n_h(win.rows * (win.cols - 1)) {}

  std::size_t edges() const { return n_h + (w.rows - 1) * w.cols; }
  std::size_t h_edge(std::size_t i, std::size_t j) const { return i * (w.cols - 1) + j; }
  std::size_t v_edge(std::size_t i, std::size_t j) const { return n_h + i * w.cols + j; }

  // Endpoint nodes (row, col) of an edge.
  std::array<std::size_t, 4> ends(std::size_t e) const {
    if (e < n_h) {
      const std::size_t i = e / (w.cols - 1);
      const std::size_t j = e % (w.cols - 1);
      return {i, j, i, j + 1};
    }
    const std::size_t r = e - n_h;
    const std::size_t i = r / w.cols;
    const std::size_t j = r % w.cols;
    return {i, j, i + 1, j};
  }
};

bool inside(double v) { return v >= 0.0; }

}  // namespace

CurveSet trace_implicit(const ScalarField& f, const Window& window, CurveKind kind, Exec exec) {
  window.validate();
  const std::vector<double> vals = sample_nodes(window, f, exec);
  const Grid grid(window);
  const std::size_t cols = window.cols;
  auto at = [&](std::size_t i, std::size_t j) { return vals[i * cols + j]; };

  std::vector<std::array<std::int64_t, 2>> link(grid.edges(), {-1, -1});
  auto connect = [&](std::size_t a, std::size_t b) {
    auto push = [&](std::size_t from, std::size_t to) {
      auto& slot = link[from];
      (slot[0] < 0 ? slot[0] : slot[1]) = static_cast<std::int64_t>(to);
    };
    push(a, b);
    push(b, a);
  };

  for (std::size_t i = 0; i + 1 < window.rows; ++i) {
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      const bool c0 = inside(at(i, j));
      const bool c1 = inside(at(i, j + 1));
      const bool c2 = inside(at(i + 1, j + 1));
      const bool c3 = inside(at(i + 1, j));
      const std::size_t bottom = grid.h_edge(i, j);
      const std::size_t right = grid.v_edge(i, j + 1);
      const std::size_t top = grid.h_edge(i + 1, j);
      const std::size_t left = grid.v_edge(i, j);

      std::array<std::size_t, 4> hits{};
      std::size_t n = 0;
      if (c0 != c1) hits[n++] = bottom;
      if (c1 != c2) hits[n++] = right;
      if (c2 != c3) hits[n++] = top;
      if (c3 != c0) hits[n++] = left;
      if (n == 2) {
        connect(hits[0], hits[1]);
      } else if (n == 4) {
        const double sc = 0.5 * (window.node_s(j) + window.node_s(j + 1));
        const double tc = 0.5 * (window.node_t(i) + window.node_t(i + 1));
        if (inside(f(sc, tc)) == c0) {
          // Corners 0 and 2 are joined through the centre; cut off 1 and 3.
          connect(bottom, right);
          connect(top, left);
        } else {
          connect(left, bottom);
          connect(right, top);
        }
      }
    }
  }

  auto vertex = [&](std::size_t e) {
    const auto [i0, j0, i1, j1] = grid.ends(e);
    const double fa = at(i0, j0);
    const double fb = at(i1, j1);
    double r = fa / (fa - fb);
    if (!std::isfinite(r)) r = 0.5;
    r = std::clamp(r, 0.0, 1.0);
    const double s0 = window.node_s(j0);
    const double t0 = window.node_t(i0);
    return Point{s0 + r * (window.node_s(j1) - s0), t0 + r * (window.node_t(i1) - t0)};
  };

  CurveSet out;
  out.window = window;
  out.kind = kind;
  std::vector<bool> seen(grid.edges(), false);
  auto walk = [&](std::size_t start, bool closed) {
    Polyline pl;
    pl.closed = closed;
    std::int64_t prev = -1;
    auto cur = static_cast<std::int64_t>(start);
    while (cur >= 0 && !seen[static_cast<std::size_t>(cur)]) {
      const auto c = static_cast<std::size_t>(cur);
      seen[c] = true;
      pl.points.push_back(vertex(c));
      const std::int64_t next = link[c][0] == prev ? link[c][1] : link[c][0];
      prev = cur;
      cur = next;
    }
    out.polylines.push_back(std::move(pl));
  };
  for (std::size_t e = 0; e < grid.edges(); ++e)
    if (!seen[e] && link[e][0] >= 0 && link[e][1] < 0) walk(e, false);
  for (std::size_t e = 0; e < grid.edges(); ++e)
    if (!seen[e] && link[e][0] >= 0) walk(e, true);
  return out;
}

CurveSet gamma_curve(const SpectralFrame& frame, const Window& window, Exec exec) {
  CurveSet out;
  if (frame.kappa <= 1e-24 * (1.0 + frame.scale * frame.scale)) {
    // v_k = 0: the curve is the asymptote itself plus isolated points.
    window.validate();
    out.window = window;
    out.kind = CurveKind::gamma_max;
    if (frame.delta_next >= window.s_min && frame.delta_next <= window.s_max) {
      out.polylines.push_back(
          {{{frame.delta_next, window.t_min}, {frame.delta_next, window.t_max}}, false});
    }
    out.warnings.emplace_back("v_k = 0: curve degenerates to the line s = delta_{k+1}");
  } else {
    out = trace_implicit([&frame](double s, double t) { return g_value(frame, s, t).g; }, window,
                         CurveKind::gamma_max, exec);
  }
  if (frame.degenerate) {
    out.warnings.emplace_back("delta_k = delta_{k+1}: v_k depends on the eigenbasis choice");
  }
  return out;
}

CurveSet gamma_min_curve(const SpectralFrame& frame, const Window& window, Exec exec) {
  CurveSet out = trace_implicit(
      [&frame](double s, double t) { return g_min_value(frame, s, t).g; }, window,
      CurveKind::gamma_min, exec);
  if (frame.k != 2) out.warnings.emplace_back("gamma_min for k != 2 is experimental");
  return out;
}

CurveSet union_curve(const SpectralFrame& frame, const Window& window, Exec exec) {
  return trace_implicit([&frame](double s, double t) { return union_poly_value(frame, s, t); },
                        window, CurveKind::union_curve, exec);
}

CurveSet hyperbola_set(std::span<const double> deltas, std::size_t k, const Window& window,
                       Exec exec) {
  if (k < 1 || deltas.size() < k + 1) throw ParameterError("hyperbola_set: need k+1 deltas");
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (deltas[i] > deltas[i - 1]) throw ParameterError("hyperbola_set: deltas must descend");

  CurveSet out;
  out.window = window;
  out.kind = CurveKind::hyperbola;
  for (std::size_t j = 0; j <= k; ++j) {
    for (std::size_t i = j + 1; i <= k; ++i) {
      const double centre = 0.5 * (deltas[j] + deltas[i]);
      const double half_gap = 0.5 * (deltas[j] - deltas[i]);
      CurveSet one = trace_implicit(
          [=](double s, double t) {
            return (s - centre) * (s - centre) - t * t - half_gap * half_gap;
          },
          window, CurveKind::hyperbola, exec);
      for (auto& pl : one.polylines) out.polylines.push_back(std::move(pl));
    }
  }
  return out;
}

bool encloses(const Polyline& ring, Point p) {
  bool in = false;
  const auto& v = ring.points;
  if (v.size() < 3) return false;
  for (std::size_t a = 0, b = v.size() - 1; a < v.size(); b = a++) {
    if ((v[a].t > p.t) != (v[b].t > p.t)) {
      const double x = v[a].s + (p.t - v[a].t) * (v[b].s - v[a].s) / (v[b].t - v[a].t);
      if (p.s < x) in = !in;
    }
  }
  return in;
}

}  // namespace specloc
