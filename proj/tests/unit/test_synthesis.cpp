#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "adsc/ide.hpp"
#include "adsc/synthesis.hpp"
#include "adsc/validator.hpp"

using namespace adsc;

namespace {

Scenario standard_scenario(CaseLabel label, double g) {
    Scenario sc = build_case(label, 3);
    sc.pulse = SenderPulse::sine(g);
    return sc;
}

double peak_after(const SampledSignal& s, double t_from) {
    double peak = 0.0;
    for (std::size_t n = 0; n < s.size(); ++n)
        if (s.grid.at(n) >= t_from) peak = std::max(peak, std::abs(s[n]));
    return peak;
}

}  // namespace

TEST_SUITE("synthesis") {

TEST_CASE("zero sender pulse gives a zero receiver pulse") {
    const ChannelSpec spec = build_channel(CaseLabel::Midpoint, 3);
    const TimeGrid grid = TimeGrid::span(0.0, 2.0, 0.002);
    const IdeSolution sender = solve_decay_ide(spec, [](double) { return cplx{}; }, grid, 1.0);
    SynthesisOptions opts;
    opts.require_emptied = false;
    const Synthesis syn = synthesize_receiver(sender, spec, opts);
    for (cplx v : syn.pulses.gB_tilde.values) CHECK(v == cplx{});
    for (double b : syn.trace.beta_mag2) CHECK(b == 0.0);
}

TEST_CASE("a sender that never empties is refused") {
    Scenario sc = build_case(CaseLabel::Midpoint, 3);
    sc.pulse = SenderPulse::zero();
    sc.grid = TimeGrid::span(0.0, 2.0, 0.002);
    CHECK_THROWS_AS(synthesize(sc), SynthesisRefused);
}

TEST_CASE("dark-state condition holds on every unclamped node") {
    const Scenario sc = standard_scenario(CaseLabel::Midpoint, 0.3);
    const Synthesis syn = synthesize(sc);
    const PulsePair& p = syn.pulses;
    std::size_t checked = 0;
    for (std::size_t n = 0; n < p.grid().size(); ++n) {
        const cplx bt = syn.trace.beta_tilde[n];
        const cplx gb = p.gB_tilde[n];
        if (std::abs(bt) <= p.clamp_eps || std::abs(gb) >= p.g_max) continue;
        const cplx x = syn.trace.x[n];
        CHECK(std::abs(std::conj(gb) * bt + x) <= 1e-14 * std::max(1.0, std::abs(x)));
        ++checked;
    }
    CHECK(checked + 2 >= p.grid().size());
}

TEST_CASE("trace invariants") {
    for (CaseLabel label : {CaseLabel::Midpoint, CaseLabel::Resonant}) {
        const Synthesis syn = synthesize(standard_scenario(label, 0.25));
        const SynthesisTrace& tr = syn.trace;
        CHECK(tr.beta_mag2.front() == 0.0);
        for (double b : tr.beta_mag2) CHECK(b >= 0.0);
        CHECK(tr.beta_mag2.back() > 1.0 - 1e-6);
        for (std::size_t n = 0; n < tr.x.size(); ++n)
            if (syn.pulses.gA[n] == cplx{}) CHECK(tr.x[n] == cplx{});
    }
}

TEST_CASE("real scenarios give real receiver pulses") {
    for (CaseLabel label : {CaseLabel::Midpoint, CaseLabel::Resonant}) {
        const Synthesis syn = synthesize(standard_scenario(label, 0.35));
        double peak = 0.0, imag = 0.0;
        for (cplx v : syn.pulses.gB_tilde.values) {
            peak = std::max(peak, std::abs(v));
            imag = std::max(imag, std::abs(v.imag()));
        }
        CHECK(imag <= 1e-10 * peak);
    }
}

TEST_CASE("magnitude and phase agree with the complex amplitude") {
    const Synthesis syn = synthesize(standard_scenario(CaseLabel::Midpoint, 0.3));
    const SynthesisTrace& tr = syn.trace;
    const double dt = syn.pulses.grid().dt;
    for (std::size_t n = 250; n + 10 < tr.beta_tilde.size(); n += 97) {
        const double rate = (tr.beta_mag2[n + 1] - tr.beta_mag2[n - 1]) / (2.0 * dt);
        const double mag_rate = (std::abs(tr.beta_tilde[n + 1]) - std::abs(tr.beta_tilde[n - 1])) / (2.0 * dt);
        CHECK(std::abs(rate - 2.0 * std::abs(tr.beta_tilde[n]) * mag_rate) < 1e-4);
        CHECK(std::abs(std::norm(tr.beta_tilde[n]) - tr.beta_mag2[n]) < 1e-12);
    }
}

TEST_CASE("resonant case needs stronger receiver peaks") {
    for (double g : {0.2, 0.3}) {
        const Synthesis c1 = synthesize(standard_scenario(CaseLabel::Midpoint, g));
        const Synthesis c2 = synthesize(standard_scenario(CaseLabel::Resonant, g));
        CHECK(peak_after(c2.pulses.gB_tilde, 0.5) > peak_after(c1.pulses.gB_tilde, 0.5));
    }
}

TEST_CASE("faster transfer for stronger sender coupling") {
    double last = 1e300;
    for (double g : {0.15, 0.25, 0.35}) {
        const double tf = synthesize(standard_scenario(CaseLabel::Midpoint, g)).pulses.t_f;
        CHECK(tf < last);
        last = tf;
    }
}

TEST_CASE("channel amplitudes vanish at the start") {
    const Synthesis syn = synthesize(standard_scenario(CaseLabel::Midpoint, 0.15));
    const ChannelSpec spec = build_channel(CaseLabel::Midpoint, 3);
    for (cplx c : reconstruct_channel_amplitudes(syn.trace.x, spec, 0.0)) CHECK(c == cplx{});
}

TEST_CASE("channel amplitudes match the directly integrated modes") {
    const Scenario sc = standard_scenario(CaseLabel::Midpoint, 0.15);
    const Synthesis syn = synthesize(sc);
    const Trajectory traj = evolve_single_excitation(sc.channel, syn.pulses);
    for (double t : {1.0, syn.pulses.t_f / 2.0, syn.pulses.t_f - 1.0}) {
        const std::size_t n = static_cast<std::size_t>(std::llround(t / traj.grid.dt));
        const std::vector<cplx> c = reconstruct_channel_amplitudes(syn.trace.x, sc.channel, traj.grid.at(n));
        for (std::size_t k = 0; k < c.size(); ++k) CHECK(std::abs(c[k] - traj.c_modes[k][n]) < 5e-6);
    }
    const double after = syn.pulses.t_f + sc.channel.t0 + 0.1;
    for (cplx c : reconstruct_channel_amplitudes(syn.trace.x, sc.channel, after)) CHECK(std::abs(c) < 1e-4);
}

TEST_CASE("terminal residual of an exact dark state is zero") {
    const ChannelSpec spec = build_channel(CaseLabel::Midpoint, 3);
    const TimeGrid grid = TimeGrid::span(0.0, 1.0, 0.002);
    SampledSignal ga(grid), alpha(grid), gb(grid), beta(grid);
    for (std::size_t n = 0; n < grid.size(); ++n) {
        const double t = grid.at(n);
        ga.values[n] = 1.0 + t;
        alpha.values[n] = std::cos(t);
        const double shape = 0.5 + 0.2 * t;
        beta.values[n] = std::sqrt(t) * shape;
        gb.values[n] = -ga[n] * std::conj(alpha[n]) / shape;
    }
    for (double r : terminal_residual(ga, alpha, gb, beta, spec)) CHECK(r < 1e-12);
}

TEST_CASE("terminal residual of the standard scenarios") {
    const Synthesis c1 = synthesize(standard_scenario(CaseLabel::Midpoint, 0.4));
    const ChannelSpec s1 = build_channel(CaseLabel::Midpoint, 3);
    for (double r : terminal_residual(c1.pulses.gA, c1.trace.alpha, c1.pulses.gB_regular, c1.trace.beta_tilde, s1))
        CHECK(r < 1e-5);

    const Synthesis c2 = synthesize(standard_scenario(CaseLabel::Resonant, 0.15));
    const ChannelSpec s2 = build_channel(CaseLabel::Resonant, 3);
    for (double r : terminal_residual(c2.pulses.gA, c2.trace.alpha, c2.pulses.gB_regular, c2.trace.beta_tilde, s2))
        CHECK(r < 5e-5);
}

TEST_CASE("growth equation reproduces the synthesized receiver amplitude") {
    const Scenario sc = standard_scenario(CaseLabel::Midpoint, 0.3);
    const Synthesis syn = synthesize(sc);
    const TimeGrid& grid = syn.pulses.grid();
    const cplx end = syn.trace.beta_tilde.values.back();
    const SampledSignal beta =
        solve_windowed_ide(sc.channel, syn.pulses.gB_tilde, WindowDirection::Growth, grid, end);
    for (std::size_t n = 0; n < grid.size(); ++n) {
        if (grid.at(n) < 0.5) continue;
        CHECK(std::abs(std::norm(beta[n]) - syn.trace.beta_mag2[n]) < 1e-3);
    }
}

}
