#include <benchmark/benchmark.h>

#include "qsync/dynamics.hpp"

namespace {

void BM_ClosedForm(benchmark::State& state) {
    const auto params = qsync::BathParams::make(1.0, 0.01, 1.0);
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qsync::h_closed_form(params, t));
        t = t < 500.0 ? t + 0.37 : 0.0;
    }
}
BENCHMARK(BM_ClosedForm);

void BM_VolterraRecursive(benchmark::State& state) {
    const auto params = qsync::BathParams::make(1.0, 5.0, 0.0);
    const double dt = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qsync::volterra_solve(params, 10.0, dt));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(10.0 / dt));
}
BENCHMARK(BM_VolterraRecursive)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_VolterraDirect(benchmark::State& state) {
    const auto params = qsync::BathParams::make(1.0, 5.0, 0.0);
    const double dt = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(qsync::volterra_solve(params, 1.0, dt, qsync::VolterraMode::Direct));
}
BENCHMARK(BM_VolterraDirect)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

} // namespace
