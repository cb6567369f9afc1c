#include <benchmark/benchmark.h>

#include "adsc/synthesis.hpp"
#include "adsc/validator.hpp"

using namespace adsc;

static Scenario scenario(int label, double g) {
    Scenario sc = build_case(label == 0 ? CaseLabel::Midpoint : CaseLabel::Resonant, 3);
    sc.pulse = SenderPulse::sine(g);
    return sc;
}

static void BM_Synthesize(benchmark::State& state) {
    const Scenario sc = scenario(static_cast<int>(state.range(0)), 0.3);
    for (auto _ : state) {
        Synthesis syn = synthesize(sc);
        benchmark::DoNotOptimize(syn.pulses.t_f);
    }
}
BENCHMARK(BM_Synthesize)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Validate(benchmark::State& state) {
    const Scenario sc = scenario(static_cast<int>(state.range(0)), 0.3);
    const Synthesis syn = synthesize(sc);
    for (auto _ : state) {
        Trajectory tr = evolve_single_excitation(sc.channel, syn.pulses);
        benchmark::DoNotOptimize(tr.beta.back());
    }
}
BENCHMARK(BM_Validate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Leakage(benchmark::State& state) {
    const Scenario sc = scenario(0, 0.3);
    const Synthesis syn = synthesize(sc);
    for (auto _ : state) {
        LeakageReport r = evolve_leakage(sc.channel, syn.pulses, 0.01, to_angular(2.5));
        benchmark::DoNotOptimize(r.inefficiency);
    }
}
BENCHMARK(BM_Leakage)->Unit(benchmark::kMillisecond);
