#include <benchmark/benchmark.h>

#include <cstdint>

#include "limcurve/digitsum.hpp"
#include "limcurve/limiting_curve.hpp"
#include "limcurve/odometer.hpp"
#include "limcurve/takagi.hpp"

namespace {

using namespace limcurve;

const QParam& three_quarters() {
  static const QParam p(Rational(3, 4));
  return p;
}

void BM_PartialSumFast(benchmark::State& state) {
  Integer n = pow2(static_cast<std::uint64_t>(state.range(0))) + 12345;
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_sum_fast(n, three_quarters()));
  }
}
BENCHMARK(BM_PartialSumFast)->Arg(20)->Arg(40)->Arg(64)->Arg(256);

void BM_PartialSumBruteforce(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_sum_bruteforce(n, three_quarters()));
  }
}
BENCHMARK(BM_PartialSumBruteforce)->Arg(1 << 8)->Arg(1 << 12);

void BM_TakagiDyadic(benchmark::State& state) {
  const auto e = static_cast<std::uint64_t>(state.range(0));
  const DyadicRational t(pow2(e) / 3, e);
  const Rational a(2, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(takagi_dyadic_exact(t, a));
  }
}
BENCHMARK(BM_TakagiDyadic)->Arg(10)->Arg(30)->Arg(60);

void BM_ZeroStateCurve(benchmark::State& state) {
  const auto j = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(zero_state_curve(j, three_quarters(), Normalization::analytic));
  }
}
BENCHMARK(BM_ZeroStateCurve)->Arg(6)->Arg(10);

void BM_LevelOrbitGrid(benchmark::State& state) {
  const OdometerState s = OdometerState::seeded(1, 8192);
  const auto level = static_cast<std::size_t>(state.range(0));
  const LevelOrbit orbit(s, three_quarters(), level);
  for (auto _ : state) {
    benchmark::DoNotOptimize(orbit.grid_sums(10));
  }
}
BENCHMARK(BM_LevelOrbitGrid)->Arg(128)->Arg(1024);

void BM_Bridge(benchmark::State& state) {
  const OdometerState s = OdometerState::seeded(1, 8192);
  BridgeConfig config;
  config.parallel = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bridge_experiment(s, three_quarters(), config));
  }
}
BENCHMARK(BM_Bridge)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
