// Throughput comparison of the OpenMP evaluation path against the serial
// reference on the heavy inner loops: Hellinger-block series, kernel
// assembly, and the scale-grid scan.

#include <benchmark/benchmark.h>

#include "gpm/engine.hpp"
#include "gpm/kernels.hpp"
#include "gpm/measures.hpp"
#include "gpm/par.hpp"

namespace {

gpm::MeasureSpec bench_spec(long window) { return gpm::MeasureSpec::example_011_11(window); }

void kakutani_series(benchmark::State& state, bool parallel) {
  gpm::par::use_parallel() = parallel;
  const gpm::MeasureSpec spec = bench_spec(state.range(0));
  const gpm::GroupElement t = gpm::make_two_param(2, 0.7, -0.3);
  for (auto _ : state) {
    const gpm::SeriesReport rep = gpm::kakutani_orthogonality(spec, t);
    benchmark::DoNotOptimize(rep.partial_sums);
  }
  gpm::par::use_parallel() = true;
}

void kernel_battery(benchmark::State& state, bool parallel) {
  gpm::par::use_parallel() = parallel;
  const gpm::MeasureSpec spec = bench_spec(400);
  const long m = state.range(0);
  for (auto _ : state) {
    const gpm::KernelResult res = gpm::kernel_XX_by_AA(spec, 2, 0, 1, m);
    benchmark::DoNotOptimize(res.residual_min);
  }
  gpm::par::use_parallel() = true;
}

void sincos_kernel(benchmark::State& state, bool parallel) {
  gpm::par::use_parallel() = parallel;
  const gpm::MeasureSpec spec = bench_spec(400);
  const long m = state.range(0);
  for (auto _ : state) {
    const gpm::KernelResult res =
        gpm::kernel_D_by_sincos(spec, 0, gpm::sincos_kernel_scale(spec), false, m);
    benchmark::DoNotOptimize(res.residual_min);
  }
  gpm::par::use_parallel() = true;
}

}  // namespace

BENCHMARK_CAPTURE(kakutani_series, omp, true)->Arg(20000)->Arg(100000);
BENCHMARK_CAPTURE(kakutani_series, serial, false)->Arg(20000)->Arg(100000);
BENCHMARK_CAPTURE(kernel_battery, omp, true)->Arg(2000)->Arg(10000);
BENCHMARK_CAPTURE(kernel_battery, serial, false)->Arg(2000)->Arg(10000);
BENCHMARK_CAPTURE(sincos_kernel, omp, true)->Arg(10000);
BENCHMARK_CAPTURE(sincos_kernel, serial, false)->Arg(10000);

BENCHMARK_MAIN();
