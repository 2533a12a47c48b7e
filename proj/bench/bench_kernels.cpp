// Serial reference vs parallel kernels on the workloads the CLI runs most.

#include <benchmark/benchmark.h>

#include "specloc/curve_trace.hpp"
#include "specloc/envelope.hpp"
#include "specloc/gallery.hpp"
#include "specloc/inequality.hpp"

using namespace specloc;

namespace {

Exec policy(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void BM_GridSample(benchmark::State& state) {
  const auto a = random_matrix(6, 1, true);
  const auto f = build_frame(a, static_cast<std::size_t>(state.range(1)), 0.0);
  Window w = auto_window(f);
  w.cols = 400;
  w.rows = 300;
  for (auto _ : state) {
    auto v = sample_nodes(w, [&f](double s, double t) { return g_value(f, s, t).g; }, policy(state));
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.cols * w.rows));
}
BENCHMARK(BM_GridSample)->ArgsProduct({{0, 1}, {1, 2, 3}})->ArgNames({"parallel", "k"})->Unit(benchmark::kMillisecond);

void BM_GammaCurve(benchmark::State& state) {
  const auto f = build_frame(build_matrix({GalleryName::matrix_F, {}}), 2, 0.0);
  const Window w = auto_window(f);
  for (auto _ : state) benchmark::DoNotOptimize(gamma_curve(f, w, policy(state)).polylines.size());
}
BENCHMARK(BM_GammaCurve)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_EnvelopeRaster(benchmark::State& state) {
  const auto a = build_matrix({GalleryName::toeplitz_eq1, {}});
  const Window w = numrange_window(a, 0.1, 320, 240);
  for (auto _ : state) benchmark::DoNotOptimize(envelope_raster(a, 2, 120, w, policy(state)).count());
}
BENCHMARK(BM_EnvelopeRaster)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_FrameBuild(benchmark::State& state) {
  const auto a = random_matrix(static_cast<std::size_t>(state.range(0)), 2, true);
  double theta = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_frame(a, 2, theta).kappa);
    theta += 0.01;
  }
}
BENCHMARK(BM_FrameBuild)->Arg(4)->Arg(8)->Arg(16)->ArgName("n");

}  // namespace

BENCHMARK_MAIN();
