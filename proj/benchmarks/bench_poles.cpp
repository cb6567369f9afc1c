#include <benchmark/benchmark.h>

#include "adsc/channel.hpp"
#include "adsc/poles.hpp"

using namespace adsc;

static void BM_FindPoles(benchmark::State& state) {
    const ChannelSpec spec = build_channel(CaseLabel::Resonant, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        PoleSet set = find_poles(spec, to_angular(0.3));
        benchmark::DoNotOptimize(set.slowest_decay);
    }
}
BENCHMARK(BM_FindPoles)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_SingleQubitPoles(benchmark::State& state) {
    const ChannelSpec spec = build_channel(CaseLabel::Resonant, 20);
    for (auto _ : state) benchmark::DoNotOptimize(single_qubit_poles(spec, to_angular(0.3)));
}
BENCHMARK(BM_SingleQubitPoles);
