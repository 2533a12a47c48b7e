#include "specloc/kernels.hpp"

#include <cstdint>

#include "specloc/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace specloc {

void Window::validate() const {
  if (!(s_min < s_max) || !(t_min < t_max)) throw ParameterError("window: empty range");
  if (cols < 2 || rows < 2) throw ParameterError("window: need at least 2x2 samples");
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, Exec exec) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
}

std::vector<double> sample_nodes(const Window& w, const ScalarField& f, Exec exec) {
  w.validate();
  std::vector<double> values(w.rows * w.cols);
  parallel_for(
      w.rows,
      [&](std::size_t i) {
        const double t = w.node_t(i);
        for (std::size_t j = 0; j < w.cols; ++j) values[i * w.cols + j] = f(w.node_s(j), t);
      },
      exec);
  return values;
}

std::vector<std::uint8_t> classify_cells(const Window& w, const Predicate& pred, Exec exec) {
  w.validate();
  std::vector<std::uint8_t> bits(w.rows * w.cols);
  parallel_for(
      w.rows,
      [&](std::size_t i) {
        const double t = w.cell_t(i);
        for (std::size_t j = 0; j < w.cols; ++j) bits[i * w.cols + j] = pred(w.cell_s(j), t) ? 1 : 0;
      },
      exec);
  return bits;
}

int worker_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace specloc
