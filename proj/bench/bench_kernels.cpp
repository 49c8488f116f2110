// Serial reference against the OpenMP drivers for each kernel.

#include <benchmark/benchmark.h>

#include "k3lat/kernels.hpp"

namespace {

using k3lat::kernels::Exec;

k3lat::kernels::BoxQuery box_query(std::int64_t bound)
{
    // Lambda_10 = <10> + U, vectors of norm 2.
    return {{10, 0, 0, 0, 0, 1, 0, 1, 0}, 3, 2, bound};
}

void BM_Box(benchmark::State& state, Exec exec)
{
    const auto q = box_query(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(k3lat::kernels::enumerate_box(q, exec));
    state.SetItemsProcessed(state.iterations() * (2 * q.bound + 1) * (2 * q.bound + 1) * (2 * q.bound + 1));
}

void BM_Primes(benchmark::State& state, Exec exec)
{
    k3lat::kernels::PrimeQuery q;
    q.values = {2, -1, -2, 3, 5};
    q.count = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(k3lat::kernels::qr_primes(q, exec));
}

void BM_LambdaScan(benchmark::State& state, Exec exec)
{
    k3lat::kernels::LambdaScanQuery q;
    q.n = 37 * 3;
    q.q22 = 6;
    q.bound = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(k3lat::kernels::lambda_scan(q, exec));
}

} // namespace

BENCHMARK_CAPTURE(BM_Box, serial, Exec::Serial)->Arg(20)->Arg(60);
BENCHMARK_CAPTURE(BM_Box, parallel, Exec::Parallel)->Arg(20)->Arg(60);
BENCHMARK_CAPTURE(BM_Primes, serial, Exec::Serial)->Arg(50)->Arg(500);
BENCHMARK_CAPTURE(BM_Primes, parallel, Exec::Parallel)->Arg(50)->Arg(500);
BENCHMARK_CAPTURE(BM_LambdaScan, serial, Exec::Serial)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(BM_LambdaScan, parallel, Exec::Parallel)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
