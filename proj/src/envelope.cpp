#include "specloc/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "specloc/errors.hpp"
#include "specloc/inequality.hpp"

namespace specloc {

std::size_t RegionRaster::count() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::vector<double> uniform_thetas(std::size_t count) {
  std::vector<double> th(count);
  for (std::size_t m = 0; m < count; ++m)
    th[m] = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(count);
  return th;
}

namespace {

void check_order(const ComplexMatrix& a, std::size_t k, const char* what) {
  if (!a.square() || a.rows() == 0) throw DimensionError(std::string(what) + ": matrix must be square");
  if (k < 1 || k + 1 > a.rows()) throw ParameterError(std::string(what) + ": k must lie in [1, n-1]");
}

}  // namespace

Envelope::Envelope(const ComplexMatrix& a, std::size_t k, std::vector<double> thetas, Exec exec,
                   FrameCache* cache)
    : k_(k), thetas_(std::move(thetas)) {
  check_order(a, k, "envelope");
  if (thetas_.empty()) throw ParameterError("envelope: need at least one theta");
  frames_.resize(thetas_.size());
  parallel_for(
      thetas_.size(),
      [&](std::size_t m) {
        frames_[m] = cache != nullptr ? *cache->get(a, k, thetas_[m]) : build_frame(a, k, thetas_[m]);
      },
      exec);
  tol_ = membership_tolerance(frames_.front());
}

bool Envelope::contains(cplx p) const {
  for (const auto& f : frames_) {
    const cplx z = std::polar(1.0, f.theta) * p;
    if (!(g_value(f, z.real(), z.imag()).g >= -tol_)) return false;
  }
  return true;
}

double Envelope::min_g(cplx p, double* worst_theta) const {
  double best = std::numeric_limits<double>::infinity();
  double arg = thetas_.front();
  for (const auto& f : frames_) {
    const cplx z = std::polar(1.0, f.theta) * p;
    const double g = g_value(f, z.real(), z.imag()).g;
    if (g < best) {
      best = g;
      arg = f.theta;
    }
  }
  if (worst_theta != nullptr) *worst_theta = arg;
  return best;
}

RankRange::RankRange(const ComplexMatrix& a, std::size_t ell, std::vector<double> thetas, Exec exec)
    : ell_(ell), thetas_(std::move(thetas)) {
  if (!a.square() || a.rows() == 0) throw DimensionError("rank numerical range: matrix must be square");
  if (ell < 1 || ell > a.rows()) throw ParameterError("rank numerical range: ell must lie in [1, n]");
  if (thetas_.empty()) throw ParameterError("rank numerical range: need at least one theta");
  bounds_.resize(thetas_.size());
  parallel_for(
      thetas_.size(),
      [&](std::size_t m) {
        const auto d = eigvals_hermitian(hermitian_part(std::polar(1.0, thetas_[m]) * a));
        bounds_[m] = d[ell - 1];
      },
      exec);
  tol_ = 1e-9 * (1.0 + a.max_abs());
}

bool RankRange::contains(cplx p) const {
  for (std::size_t m = 0; m < thetas_.size(); ++m) {
    if (!((std::polar(1.0, thetas_[m]) * p).real() <= bounds_[m] + tol_)) return false;
  }
  return true;
}

bool envelope_membership(const ComplexMatrix& a, std::size_t k, std::span<const double> thetas,
                         cplx p) {
  return Envelope(a, k, std::vector<double>(thetas.begin(), thetas.end()), Exec::serial).contains(p);
}

RegionRaster envelope_raster(const ComplexMatrix& a, std::size_t k, std::size_t theta_count,
                             const Window& window, Exec exec, FrameCache* cache) {
  if (theta_count < 1) throw ParameterError("envelope_raster: theta_count must be >= 1");
  window.validate();
  const Envelope env(a, k, uniform_thetas(theta_count), exec, cache);
  RegionRaster r;
  r.window = window;
  r.theta_count = theta_count;
  r.order = k;
  r.kind = RegionKind::envelope;
  r.bits = classify_cells(
      window, [&env](double s, double t) { return env.contains({s, t}); }, exec);
  return r;
}

CurveSet numerical_range_boundary(const ComplexMatrix& a, std::size_t theta_count, Exec exec) {
  if (theta_count < 3) throw ParameterError("numerical_range_boundary: theta_count must be >= 3");
  if (!a.square() || a.rows() == 0) throw DimensionError("numerical_range_boundary: matrix must be square");
  const auto thetas = uniform_thetas(theta_count);
  Polyline ring;
  ring.closed = true;
  ring.points.resize(theta_count);
  parallel_for(
      theta_count,
      [&](std::size_t m) {
        const auto eig = eig_hermitian(hermitian_part(std::polar(1.0, thetas[m]) * a));
        const ComplexMatrix u1 = eig.vectors.block(0, 0, a.rows(), 1);
        const cplx z = (u1.adjoint() * a * u1)(0, 0);
        ring.points[m] = {z.real(), z.imag()};
      },
      exec);
  CurveSet out;
  out.kind = CurveKind::numrange;
  out.window = numrange_window(a);
  out.polylines.push_back(std::move(ring));
  return out;
}

RegionRaster rank_numrange_raster(const ComplexMatrix& a, std::size_t ell, std::size_t theta_count,
                                  const Window& window, Exec exec) {
  if (theta_count < 1) throw ParameterError("rank_numrange_raster: theta_count must be >= 1");
  window.validate();
  const RankRange range(a, ell, uniform_thetas(theta_count), exec);
  RegionRaster r;
  r.window = window;
  r.theta_count = theta_count;
  r.order = ell;
  r.kind = ell == 1 ? RegionKind::numrange : RegionKind::rank_numrange;
  r.bits = classify_cells(
      window, [&range](double s, double t) { return range.contains({s, t}); }, exec);
  return r;
}

Window numrange_window(const ComplexMatrix& a, double margin, std::size_t cols, std::size_t rows) {
  const auto re = eigvals_hermitian(hermitian_part(a));
  const auto im = eigvals_hermitian(cplx{0.0, -1.0} * skew_part(a));
  double pad = margin * std::max(re.front() - re.back(), im.front() - im.back());
  if (pad <= 1e-12 * (1.0 + a.max_abs())) pad = 1.0;
  Window w;
  w.s_min = re.back() - pad;
  w.s_max = re.front() + pad;
  w.t_min = im.back() - pad;
  w.t_max = im.front() + pad;
  w.cols = cols;
  w.rows = rows;
  return w;
}

}  // namespace specloc
