#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "lzs/impulse.hpp"
#include "lzs/schrodinger.hpp"
#include "lzs/spectral.hpp"
#include "lzs/units.hpp"

namespace {

using lzs::units::mhz_to_rad_per_ns;

lzs::SystemSpec two_tls() {
  return lzs::SystemSpec({{mhz_to_rad_per_ns(200), mhz_to_rad_per_ns(17)},
                          {mhz_to_rad_per_ns(400), mhz_to_rad_per_ns(17)}},
                         1.0);
}

void BM_AnalyticSweep(benchmark::State& state) {
  const auto sys = two_tls();
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto t = lzs::linspace(20, 120, n);
  const auto a = lzs::linspace(mhz_to_rad_per_ns(400), mhz_to_rad_per_ns(1200), n);
  const lzs::ImpulseOptions options{true, state.range(1) ? lzs::PhaseModel::Adiabatic : lzs::PhaseModel::Diabatic};
  for (auto _ : state) benchmark::DoNotOptimize(lzs::pattern_sweep(sys, t, a, options).values.sum());
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n * n));
}
BENCHMARK(BM_AnalyticSweep)->ArgsProduct({{32, 100}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Propagate(benchmark::State& state) {
  const auto sys = two_tls();
  const lzs::TrianglePulse pulse(mhz_to_rad_per_ns(800), static_cast<double>(state.range(0)));
  const double dt = lzs::DtPolicy{}.step_for(sys, pulse);
  for (auto _ : state) benchmark::DoNotOptimize(lzs::propagate(sys, pulse, dt));
}
BENCHMARK(BM_Propagate)->Arg(20)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_DftSeries(benchmark::State& state) {
  std::vector<double> series(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < series.size(); ++i) series[i] = std::cos(0.37 * static_cast<double>(i));
  for (auto _ : state) benchmark::DoNotOptimize(lzs::dft_series(series));
}
BENCHMARK(BM_DftSeries)->RangeMultiplier(4)->Range(64, 4096);

}  // namespace

BENCHMARK_MAIN();
