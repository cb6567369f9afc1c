#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "adsc/synthesis.hpp"
#include "adsc/validator.hpp"

using namespace adsc;

namespace {

PulsePair zero_pulses(double t_f, double dt) {
    const TimeGrid g = TimeGrid::span(0.0, t_f, dt);
    PulsePair p;
    p.gA = SampledSignal(g);
    p.gB_tilde = SampledSignal(g);
    p.gB_regular = SampledSignal(g);
    p.t_f = t_f;
    return p;
}

struct Fixture {
    Scenario sc;
    Synthesis syn;
};

Fixture standard_run(CaseLabel label, double g) {
    Fixture f;
    f.sc = build_case(label, 3);
    f.sc.pulse = SenderPulse::sine(g);
    f.syn = synthesize(f.sc);
    return f;
}

}  // namespace

TEST_SUITE("validator") {

TEST_CASE("zero pulses leave the sender excited") {
    const ChannelSpec spec = build_channel(CaseLabel::Midpoint, 3);
    const Trajectory tr = evolve_single_excitation(spec, zero_pulses(2.0, 0.002));
    for (std::size_t n = 0; n < tr.grid.size(); ++n) {
        CHECK(tr.alpha[n] == cplx{1.0});
        CHECK(tr.beta[n] == cplx{});
        for (const auto& c : tr.c_modes) CHECK(c[n] == cplx{});
    }
}

TEST_CASE("ADSC discrepancy for synthesized pulses") {
    const Fixture c1 = standard_run(CaseLabel::Midpoint, 0.3);
    const Trajectory t1 = evolve_single_excitation(c1.sc.channel, c1.syn.pulses);
    CHECK(compare(t1, c1.syn.trace, c1.sc.channel.t0).max() < 1e-6);

    const Fixture c2 = standard_run(CaseLabel::Resonant, 0.3);
    const Trajectory t2 = evolve_single_excitation(c2.sc.channel, c2.syn.pulses);
    CHECK(compare(t2, c2.syn.trace, c2.sc.channel.t0).max() < 3e-5);
}

TEST_CASE("norm is conserved without loss") {
    const Fixture f = standard_run(CaseLabel::Midpoint, 0.25);
    const Trajectory tr = evolve_single_excitation(f.sc.channel, f.syn.pulses);
    const double span = tr.grid.t_end() - tr.grid.t_i;
    for (double n : tr.norm) CHECK(std::abs(n - 1.0) < 1e-9 * span);
}

TEST_CASE("zero rates reproduce the lossless run") {
    const Fixture f = standard_run(CaseLabel::Resonant, 0.3);
    const Trajectory a = evolve_single_excitation(f.sc.channel, f.syn.pulses);
    const Trajectory b = evolve_with_loss(f.sc.channel, f.syn.pulses, LossRates{});
    CHECK(a.beta == b.beta);
    CHECK(a.alpha == b.alpha);
}

TEST_CASE("lossy norm decreases monotonically") {
    const Fixture f = standard_run(CaseLabel::Resonant, 0.3);
    const Trajectory tr = evolve_with_loss(f.sc.channel, f.syn.pulses, LossRates{to_angular(1e-3), to_angular(1e-3)});
    for (std::size_t n = 1; n < tr.norm.size(); ++n) CHECK(tr.norm[n] <= tr.norm[n - 1] * (1.0 + 1e-12));
    CHECK_THROWS_AS(evolve_with_loss(f.sc.channel, f.syn.pulses, LossRates{-1.0, 0.0}), ConfigError);
}

TEST_CASE("channel loss matches kappa times the integrated population") {
    std::vector<double> ineff;
    for (double g : {0.15, 0.25, 0.4}) {
        const Fixture f = standard_run(CaseLabel::Resonant, g);
        const LossRates rates{to_angular(1e-3), 0.0};
        const Trajectory lossless = evolve_single_excitation(f.sc.channel, f.syn.pulses);
        double e = 0.0;
        for (std::size_t n = 0; n + 1 < lossless.grid.size(); ++n)
            e += 0.5 * lossless.grid.dt * (lossless.channel_population(n) + lossless.channel_population(n + 1));
        const double sim = loss_inefficiency(evolve_with_loss(f.sc.channel, f.syn.pulses, rates), rates).inefficiency;
        CHECK(std::abs(sim - rates.kappa * e) < 0.2 * rates.kappa * e);
        ineff.push_back(sim);
    }
    const auto [lo, hi] = std::minmax_element(ineff.begin(), ineff.end());
    CHECK(*hi / *lo < 1.1);
}

TEST_CASE("qubit loss stays below one percent for strong coupling") {
    const Fixture f = standard_run(CaseLabel::Resonant, 0.4);
    const LossRates rates{0.0, to_angular(1e-3)};
    const LossOutcome out = loss_inefficiency(evolve_with_loss(f.sc.channel, f.syn.pulses, rates), rates);
    CHECK(out.inefficiency < 0.01);
}

TEST_CASE("leakage with zero excitation ratio is the baseline") {
    const Fixture f = standard_run(CaseLabel::Midpoint, 0.3);
    const LeakageReport r = evolve_leakage(f.sc.channel, f.syn.pulses, 0.0, to_angular(2.5));
    const Trajectory tr = evolve_single_excitation(f.sc.channel, f.syn.pulses);
    CHECK(std::abs(r.inefficiency - (1.0 - std::norm(tr.beta.back()))) < 1e-9);
    CHECK(std::abs(r.inefficiency - r.baseline) < 1e-9);
}

TEST_CASE("leakage inefficiency grows linearly") {
    const Fixture f = standard_run(CaseLabel::Midpoint, 0.3);
    const double anharm = to_angular(2.5);
    const double base = evolve_leakage(f.sc.channel, f.syn.pulses, 0.0, anharm).inefficiency;
    const double a = evolve_leakage(f.sc.channel, f.syn.pulses, 0.01, anharm).inefficiency - base;
    const double b = evolve_leakage(f.sc.channel, f.syn.pulses, 0.02, anharm).inefficiency - base;
    CHECK(b / a == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("two-excitation basis size") {
    const ChannelSpec spec = build_channel(CaseLabel::Resonant, 3);
    const std::size_t m = spec.modes();
    CHECK(two_excitation_basis(spec).size() == 3 + 2 * m + m * (m - 1) / 2 + m);
}

TEST_CASE("stronger coupling leaves less on the doubly excited sender") {
    auto relative_2a = [](double g) {
        const Fixture f = standard_run(CaseLabel::Midpoint, g);
        const LeakageReport r = evolve_leakage(f.sc.channel, f.syn.pulses, 0.01, to_angular(2.5));
        const auto it = std::find(r.basis.begin(), r.basis.end(), "2_A");
        REQUIRE(it != r.basis.end());
        return r.final_populations[static_cast<std::size_t>(it - r.basis.begin())] / 0.01;
    };
    CHECK(relative_2a(0.4) < relative_2a(0.15));
}

TEST_CASE("Heisenberg propagation with zero pulses is diagonal") {
    const ChannelSpec spec = build_channel(CaseLabel::Midpoint, 3);
    const HeisenbergReport h = evolve_linear_heisenberg(spec, zero_pulses(1.0, 0.002));
    CHECK(h.transfer == cplx{});
    CHECK(h.unitarity_error == 0.0);
}

TEST_CASE("Heisenberg transfer coefficient equals the single-excitation amplitude") {
    const Fixture f = standard_run(CaseLabel::Midpoint, 0.3);
    const HeisenbergReport h = evolve_linear_heisenberg(f.sc.channel, f.syn.pulses);
    CHECK(h.unitarity_error < 1e-8);
    CHECK(h.row_norm_error < 1e-9);
    CHECK(std::abs(std::abs(h.transfer) - h.single_excitation_beta) < 1e-12);
}

TEST_CASE("validator runs are bit-identical") {
    const Fixture f = standard_run(CaseLabel::Resonant, 0.2);
    const Trajectory a = evolve_single_excitation(f.sc.channel, f.syn.pulses);
    const Trajectory b = evolve_single_excitation(f.sc.channel, f.syn.pulses);
    CHECK(a.beta == b.beta);
    CHECK(a.c_modes == b.c_modes);
}

}
