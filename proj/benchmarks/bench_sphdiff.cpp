#include <benchmark/benchmark.h>

#include <vector>

#include "sphdiff/legendre.hpp"
#include "sphdiff/mode_evolution.hpp"
#include "sphdiff/random_field.hpp"
#include "sphdiff/spectrum.hpp"

namespace {

const sphdiff::ModelParams params{1.0, 1.0, 0.01};

void BM_LegendreColumn(benchmark::State& state) {
  const int lmax = static_cast<int>(state.range(0));
  std::vector<double> col(lmax + 1);
  double x = 0.371;
  for (auto _ : state) {
    for (int m = 0; m <= lmax; m += std::max(1, lmax / 64)) {
      sphdiff::assoc_legendre_normalized_col(lmax, m, x, col);
      benchmark::DoNotOptimize(col.data());
    }
  }
}
BENCHMARK(BM_LegendreColumn)->Arg(256)->Arg(1024)->Arg(2508);

void BM_ModeFactor(benchmark::State& state) {
  for (auto _ : state)
    for (int l = 0; l < 2508; ++l)
      benchmark::DoNotOptimize(sphdiff::mode_factor(l, 0.08, params));
}
BENCHMARK(BM_ModeFactor);

void BM_Synthesize(benchmark::State& state) {
  const int lmax = static_cast<int>(state.range(0));
  const auto spectrum = sphdiff::power_law_spectrum(4.0, 1.0, 1, lmax);
  const auto coeffs = sphdiff::sample_coefficients(spectrum, 1);
  const auto grid = sphdiff::SphereGrid::equal_angle(128, 256);
  for (auto _ : state) {
    auto field = sphdiff::synthesize(coeffs, grid, 1);
    benchmark::DoNotOptimize(field.data());
  }
}
BENCHMARK(BM_Synthesize)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_GreenFunction(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(sphdiff::green_function(1.0, 0.5, 2508, params));
}
BENCHMARK(BM_GreenFunction);

void BM_SampleCoefficients(benchmark::State& state) {
  const auto spectrum = sphdiff::power_law_spectrum(4.0, 1.0, 1, 512);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto coeffs = sphdiff::sample_coefficients(spectrum, ++seed);
    benchmark::DoNotOptimize(coeffs.stored().data());
  }
}
BENCHMARK(BM_SampleCoefficients)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
