#include <benchmark/benchmark.h>

#include "adsc/channel.hpp"
#include "adsc/ide.hpp"

using namespace adsc;

static void BM_DecayIde(benchmark::State& state) {
    const ChannelSpec spec = build_channel(CaseLabel::Midpoint, static_cast<int>(state.range(0)));
    const SenderPulse pulse = SenderPulse::sine(0.3);
    const TimeGrid grid = TimeGrid::span(0.0, 10.0, 0.002);
    IdeOptions opts;
    opts.substeps = static_cast<int>(state.range(1));
    for (auto _ : state) {
        IdeSolution sol = solve_decay_ide(spec, [&](double t) { return pulse(t); }, grid, 1.0, opts);
        benchmark::DoNotOptimize(sol.amplitude.values.back());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.n_steps));
}
BENCHMARK(BM_DecayIde)->Args({3, 1})->Args({3, 4})->Args({20, 4})->Unit(benchmark::kMillisecond);

static void BM_KernelEval(benchmark::State& state) {
    const ChannelSpec spec = build_channel(CaseLabel::Resonant, 20);
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_eval(spec, t));
        t += 1e-3;
    }
}
BENCHMARK(BM_KernelEval);
