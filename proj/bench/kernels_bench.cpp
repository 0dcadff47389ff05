// Serial reference against the chunked OpenMP reductions, per kernel and size.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "igeo/kernels.hpp"

namespace {

namespace k = igeo::kernels;

struct Arrays {
  std::vector<double> a, b, c;
};

Arrays make(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> d(0.5, 1.5);
  Arrays x{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    x.a[i] = d(rng);
    x.b[i] = d(rng);
    x.c[i] = d(rng) / static_cast<double>(n);
  }
  return x;
}

template <class Kernel>
void run(benchmark::State& state, Kernel kernel) {
  const Arrays x = make(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel(x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SumSerial(benchmark::State& s) { run(s, [](const Arrays& x) { return k::serial::sum(x.a); }); }
void BM_SumOmp(benchmark::State& s) { run(s, [](const Arrays& x) { return k::omp::sum(x.a); }); }
void BM_Dot3Serial(benchmark::State& s) {
  run(s, [](const Arrays& x) { return k::serial::dot3(x.a, x.b, x.c); });
}
void BM_Dot3Omp(benchmark::State& s) {
  run(s, [](const Arrays& x) { return k::omp::dot3(x.a, x.b, x.c); });
}
void BM_ShiftedExpSerial(benchmark::State& s) {
  run(s, [](const Arrays& x) { return k::serial::shifted_exp_dot(x.a, 1.5, x.b, x.c); });
}
void BM_ShiftedExpOmp(benchmark::State& s) {
  run(s, [](const Arrays& x) { return k::omp::shifted_exp_dot(x.a, 1.5, x.b, x.c); });
}
auto cosh2 = [](double v) { return std::cosh(v) - 1.0; };
void BM_TransformSerial(benchmark::State& s) {
  run(s, [](const Arrays& x) { return k::serial::transform_dot(x.a, x.c, cosh2); });
}
void BM_TransformOmp(benchmark::State& s) {
  run(s, [](const Arrays& x) { return k::omp::transform_dot(x.a, x.c, cosh2); });
}

#define SIZES RangeMultiplier(8)->Range(1 << 10, 1 << 22)
BENCHMARK(BM_SumSerial)->SIZES;
BENCHMARK(BM_SumOmp)->SIZES;
BENCHMARK(BM_Dot3Serial)->SIZES;
BENCHMARK(BM_Dot3Omp)->SIZES;
BENCHMARK(BM_ShiftedExpSerial)->SIZES;
BENCHMARK(BM_ShiftedExpOmp)->SIZES;
BENCHMARK(BM_TransformSerial)->SIZES;
BENCHMARK(BM_TransformOmp)->SIZES;

}  // namespace

BENCHMARK_MAIN();
