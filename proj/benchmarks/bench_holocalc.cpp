#include <benchmark/benchmark.h>

#include "holocalc/funcalc.hpp"
#include "holocalc/projections.hpp"
#include "holocalc/verify.hpp"

using namespace holocalc;

namespace {

Matrix instance(std::size_t n) {
  Rng rng(0xbe5c);
  return random_diagonalizable(rng, n, 0.15, 0.2);
}

void BM_MixedSeminorm(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  Rng rng(1);
  const Matrix t = rng.matrix(n, n);
  const Calibration p = random_positive_calibration(rng, n, 4);
  for (auto _ : state) {
    for (const auto& member : p.members())
      benchmark::DoNotOptimize(phat(member, t).value());
  }
}
BENCHMARK(BM_MixedSeminorm)->Arg(4)->Arg(8)->Arg(16);

void BM_SpectralRadius(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const Matrix t = instance(n);
  const Calibration p = Calibration::max_norm(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral_radius(p, t, 60).certified_upper());
  }
}
BENCHMARK(BM_SpectralRadius)->Arg(4)->Arg(8)->Arg(16);

void BM_ResolventDirect(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const Matrix t = instance(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(resolvent_direct(t, Complex(4.0, 1.0)));
  }
}
BENCHMARK(BM_ResolventDirect)->Arg(4)->Arg(8)->Arg(16);

void BM_ApplyFuncalcExp(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const Matrix t = instance(n);
  const Calibration p = Calibration::max_norm(n);
  const Contour gamma = default_contour(t, HoloFun::exp(), {});
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_funcalc(p, t, HoloFun::exp(), gamma, 1e-10));
  }
}
BENCHMARK(BM_ApplyFuncalcExp)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SpectralProjection(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const Matrix t = instance(n);
  const Calibration p = Calibration::max_norm(n);
  ProjectionOptions opts;
  opts.gap = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        spectral_projection(p, t, SpectralSet{{0}}, 1e-10, opts).projector);
  }
}
BENCHMARK(BM_SpectralProjection)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Eigenvalues(benchmark::State& state) {
  const std::size_t n = std::size_t(state.range(0));
  const Matrix t = instance(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenvalues(t).radius);
  }
}
BENCHMARK(BM_Eigenvalues)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
