#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace specloc {

/// Execution policy for the data-parallel kernels. `serial` is the reference
/// implementation; `parallel` must produce bit-identical output.
enum class Exec { serial, parallel };

/// Rectangular sampling window in the (s, t) = (Re λ, Im λ) plane.
/// For curve tracing `cols`×`rows` are grid nodes; for rasters they are cells.
struct Window {
  double s_min = -1.0;
  double s_max = 1.0;
  double t_min = -1.0;
  double t_max = 1.0;
  std::size_t cols = 800;
  std::size_t rows = 600;

  /// Throws ParameterError when the invariants (s_min < s_max, t_min < t_max,
  /// cols, rows ≥ 2) fail.
  void validate() const;

  double node_s(std::size_t j) const noexcept {
    return s_min + (s_max - s_min) * static_cast<double>(j) / static_cast<double>(cols - 1);
  }
  double node_t(std::size_t i) const noexcept {
    return t_min + (t_max - t_min) * static_cast<double>(i) / static_cast<double>(rows - 1);
  }
  /// Cell centres for rasters. Row 0 is the top (t_max) row.
  double cell_s(std::size_t j) const noexcept {
    return s_min + (s_max - s_min) * (static_cast<double>(j) + 0.5) / static_cast<double>(cols);
  }
  double cell_t(std::size_t i) const noexcept {
    return t_max - (t_max - t_min) * (static_cast<double>(i) + 0.5) / static_cast<double>(rows);
  }
  double cell_width() const noexcept { return (s_max - s_min) / static_cast<double>(cols); }
  double cell_height() const noexcept { return (t_max - t_min) / static_cast<double>(rows); }
};

using ScalarField = std::function<double(double s, double t)>;
using Predicate = std::function<bool(double s, double t)>;

/// f at every node of `w`, row-major with row 0 at t_min.
std::vector<double> sample_nodes(const Window& w, const ScalarField& f, Exec exec = Exec::parallel);

/// pred at every cell centre of `w`, row-major with row 0 at t_max; 1 = true.
std::vector<std::uint8_t> classify_cells(const Window& w, const Predicate& pred,
                                         Exec exec = Exec::parallel);

/// Runs body(i) for i in [0, count), in parallel when requested. Iterations
/// must write disjoint outputs.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  Exec exec = Exec::parallel);

/// Number of worker threads `Exec::parallel` will use.
int worker_threads();

}  // namespace specloc
