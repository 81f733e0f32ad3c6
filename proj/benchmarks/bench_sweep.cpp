#include <benchmark/benchmark.h>

#include "qsync/sweep.hpp"

namespace {

void BM_FigurePreset(benchmark::State& state, const char* id) {
    const auto grid = qsync::figure_preset(id);
    for (auto _ : state) benchmark::DoNotOptimize(qsync::run_sweep(grid));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.point_count()));
}
BENCHMARK_CAPTURE(BM_FigurePreset, fig1d, "fig1d")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FigurePreset, fig5a, "fig5a")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FigurePreset, fig6b, "fig6b")->Unit(benchmark::kMillisecond);

} // namespace
