#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "specloc/curve_trace.hpp"
#include "specloc/errors.hpp"
#include "specloc/gallery.hpp"
#include "specloc/inequality.hpp"
#include "support.hpp"

using namespace specloc;

namespace {

Window square(double half, std::size_t nodes) {
  Window w;
  w.s_min = -half;
  w.s_max = half;
  w.t_min = -half;
  w.t_max = half;
  w.cols = nodes;
  w.rows = nodes;
  return w;
}

double polygon_area(const Polyline& p) {
  double a = 0.0;
  for (std::size_t i = 0, j = p.points.size() - 1; i < p.points.size(); j = i++)
    a += p.points[j].s * p.points[i].t - p.points[i].s * p.points[j].t;
  return 0.5 * std::abs(a);
}

bool same(const CurveSet& a, const CurveSet& b) {
  if (a.polylines.size() != b.polylines.size()) return false;
  for (std::size_t i = 0; i < a.polylines.size(); ++i) {
    const auto& p = a.polylines[i];
    const auto& q = b.polylines[i];
    if (p.closed != q.closed || p.points.size() != q.points.size()) return false;
    for (std::size_t j = 0; j < p.points.size(); ++j)
      if (p.points[j].s != q.points[j].s || p.points[j].t != q.points[j].t) return false;
  }
  return true;
}

double nearest(const CurveSet& c, double s, double t) {
  double best = 1e300;
  for (const auto& pl : c.polylines)
    for (const auto& p : pl.points) best = std::min(best, std::hypot(p.s - s, p.t - t));
  return best;
}

}  // namespace

TEST_CASE("circle traces as one closed ring on the circle") {
  const Window w = square(2.0, 201);
  const auto c = trace_implicit([](double s, double t) { return 1.0 - s * s - t * t; }, w);
  REQUIRE(c.polylines.size() == 1);
  CHECK(c.polylines[0].closed);
  CHECK(c.closed_count() == 1);
  for (const auto& p : c.polylines[0].points) CHECK(std::abs(std::hypot(p.s, p.t) - 1.0) <= 1e-3);
  CHECK(polygon_area(c.polylines[0]) == doctest::Approx(std::numbers::pi).epsilon(1e-3));
  CHECK(encloses(c.polylines[0], {0.0, 0.0}));
  CHECK_FALSE(encloses(c.polylines[0], {1.5, 0.0}));
}

TEST_CASE("line through the window traces as one open polyline") {
  const Window w = square(1.0, 50);
  const auto c = trace_implicit([](double s, double t) { return 0.3 - s + 0.1 * t; }, w);
  REQUIRE(c.polylines.size() == 1);
  CHECK_FALSE(c.polylines[0].closed);
  CHECK(c.polylines[0].points.size() >= 50);
  for (const auto& p : c.polylines[0].points) CHECK(std::abs(0.3 - p.s + 0.1 * p.t) <= 1e-12);
}

TEST_CASE("disjoint components and empty fields") {
  const Window w = square(3.0, 121);
  const auto two = trace_implicit(
      [](double s, double t) {
        return std::max(0.25 - (s - 1.5) * (s - 1.5) - t * t, 0.25 - (s + 1.5) * (s + 1.5) - t * t);
      },
      w);
  CHECK(two.polylines.size() == 2);
  CHECK(two.closed_count() == 2);
  // Discovery order follows the edge scan, which starts with the left circle.
  CHECK(two.polylines[0].points.front().s < 0.0);

  CHECK(trace_implicit([](double, double) { return 1.0; }, w).polylines.empty());
  CHECK(trace_implicit([](double, double) { return -1.0; }, w).polylines.empty());
}

TEST_CASE("saddle cells are resolved consistently") {
  // f = s·t has a saddle at the origin; with an odd grid the origin is a node,
  // with an even grid it sits in the middle of a cell.
  for (std::size_t nodes : {10u, 11u}) {
    const auto c = trace_implicit([](double s, double t) { return s * t; }, square(1.0, nodes));
    for (const auto& pl : c.polylines) CHECK_FALSE(pl.closed);
    std::size_t vertices = 0;
    for (const auto& pl : c.polylines) vertices += pl.points.size();
    CHECK(vertices > 0);
  }
}

TEST_CASE("tracer output does not depend on the execution policy") {
  std::mt19937_64 gen(41);
  for (int rep = 0; rep < 5; ++rep) {
    const auto a = testsupport::random_complex(5, gen);
    const auto f = build_frame(a, 2, 0.0);
    const Window w = auto_window(f);
    Window small = w;
    small.cols = 300;
    small.rows = 200;
    CHECK(same(gamma_curve(f, small, Exec::serial), gamma_curve(f, small, Exec::parallel)));
    CHECK(same(union_curve(f, small, Exec::serial), union_curve(f, small, Exec::parallel)));
  }
}

TEST_CASE("Γ₂ of the 3x3 example passes through (2, ±3)") {
  const auto f = build_frame(build_matrix({GalleryName::a_tilde, {}}), 2, 0.0);
  const Window w = auto_window(f);
  const auto c = gamma_curve(f, w);
  const double cell = std::hypot(w.s_max - w.s_min, w.t_max - w.t_min) / static_cast<double>(w.cols - 1);
  CHECK(nearest(c, 2.0, 3.0) <= 2.0 * cell);
  CHECK(nearest(c, 2.0, -3.0) <= 2.0 * cell);
  for (const auto& pl : c.polylines)
    for (const auto& p : pl.points) CHECK(std::abs(g_value(f, p.s, p.t).g) <= 1.0);
}

TEST_CASE("curve vertices stay right of the asymptote") {
  std::mt19937_64 gen(42);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = testsupport::random_complex(4 + static_cast<std::size_t>(rep % 3), gen);
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto f = build_frame(a, k, 0.0);
      Window w = auto_window(f);
      w.cols = 200;
      w.rows = 150;
      const double cw = (w.s_max - w.s_min) / static_cast<double>(w.cols - 1);
      for (const auto& pl : gamma_curve(f, w).polylines)
        for (const auto& p : pl.points) CHECK(p.s >= f.delta_next - cw);
    }
  }
}

TEST_CASE("auto window covers the spectrum and the vertical lines") {
  std::mt19937_64 gen(43);
  for (int rep = 0; rep < 30; ++rep) {
    const auto a = testsupport::random_complex(5, gen);
    const auto f = build_frame(a, 2, 1.0);
    const Window w = auto_window(f);
    for (const auto& z : testsupport::general_eigs(f.a_rot)) {
      CHECK(z.real() >= w.s_min);
      CHECK(z.real() <= w.s_max);
      CHECK(z.imag() >= w.t_min);
      CHECK(z.imag() <= w.t_max);
    }
    CHECK(w.s_min < f.delta_next);
    CHECK(w.s_max > f.deltas.front());
    CHECK(w.t_min == -w.t_max);
  }
}

TEST_CASE("auto window of the 3x3 example shows the k = 2 loop") {
  const auto f = build_frame(build_matrix({GalleryName::a_tilde, {}}), 2, 0.0);
  const Window w = auto_window(f);
  CHECK(w.s_min <= 0.0);
  CHECK(w.s_max >= 3.0);
  CHECK(w.t_max >= 3.0);
  CHECK(w.t_min <= -3.0);
}

TEST_CASE("vanishing v_k collapses the curve to the asymptote") {
  // H = diag(3, 1, 0); S couples only the last two coordinates.
  const ComplexMatrix a{{3, 0, 0}, {0, 1, -2}, {0, 2, 0}};
  const auto f = build_frame(a, 1, 0.0);
  CHECK(f.kappa == 0.0);
  Window w;
  w.s_min = -1;
  w.s_max = 4;
  w.t_min = -3;
  w.t_max = 3;
  const auto c = gamma_curve(f, w);
  REQUIRE(c.polylines.size() == 1);
  CHECK(c.polylines[0].points.front().s == 1.0);
  REQUIRE(c.warnings.size() == 1);
}

TEST_CASE("gamma_min warns away from k = 2") {
  const auto f = build_frame(build_matrix({GalleryName::toeplitz_eq1, {}}), 3, 0.0);
  Window w = auto_window(f);
  w.cols = 60;
  w.rows = 60;
  CHECK(gamma_min_curve(f, w).warnings.size() == 1);
  const auto f2 = build_frame(build_matrix({GalleryName::toeplitz_eq1, {}}), 2, 0.0);
  CHECK(gamma_min_curve(f2, w).warnings.empty());
}

TEST_CASE("hyperbola set follows the region boundaries") {
  const std::vector<double> deltas{2.0, 1.0, 0.0, 0.0};
  const Window w = square(4.0, 201);
  const auto c = hyperbola_set(deltas, 2, w);
  CHECK(c.kind == CurveKind::hyperbola);
  // Three pairs, each with two branches that leave the window.
  CHECK(c.polylines.size() == 6);
  for (const auto& pl : c.polylines) {
    CHECK_FALSE(pl.closed);
    const auto& p = pl.points[pl.points.size() / 2];
    bool on_one = false;
    for (auto [j, i] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
      const double centre = 0.5 * (deltas[j] + deltas[i]);
      const double half = 0.5 * (deltas[j] - deltas[i]);
      on_one |= std::abs((p.s - centre) * (p.s - centre) - p.t * p.t - half * half) <= 0.05;
    }
    CHECK(on_one);
  }
  CHECK_THROWS_AS(hyperbola_set(deltas, 4, w), ParameterError);
}

TEST_CASE("window validation") {
  Window w;
  w.s_min = 1.0;
  w.s_max = 1.0;
  CHECK_THROWS_AS(w.validate(), ParameterError);
  w.s_max = 2.0;
  w.cols = 1;
  CHECK_THROWS_AS(w.validate(), ParameterError);
  CHECK_THROWS_AS(trace_implicit([](double, double) { return 0.0; }, w), ParameterError);
}
