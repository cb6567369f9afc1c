#include <doctest.h>

#include <cmath>

#include "adsc/diagnostics.hpp"

using namespace adsc;

namespace {

struct Run {
    Scenario sc;
    Synthesis syn;
    Trajectory traj;
};

Run standard_run(CaseLabel label, double g) {
    Run r;
    r.sc = build_case(label, 3);
    r.sc.pulse = SenderPulse::sine(g);
    r.syn = synthesize(r.sc);
    r.traj = evolve_single_excitation(r.sc.channel, r.syn.pulses);
    return r;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("no pulses, no channel population") {
    const ChannelSpec spec = build_channel(CaseLabel::Midpoint, 3);
    const TimeGrid g = TimeGrid::span(0.0, 1.0, 0.002);
    PulsePair p;
    p.gA = SampledSignal(g);
    p.gB_tilde = SampledSignal(g);
    p.gB_regular = SampledSignal(g);
    p.t_f = 1.0;
    CHECK(integrated_population(evolve_single_excitation(spec, p)) == 0.0);
}

TEST_CASE("paced emission and absorption has no buffer") {
    const TimeGrid g = TimeGrid::span(0.0, 2.0, 0.01);
    std::vector<double> a2, b2;
    for (std::size_t n = 0; n < g.size(); ++n) {
        const double s = g.at(n) / 2.0;
        a2.push_back(1.0 - s);
        b2.push_back(s);
    }
    CHECK(integrated_population_buffer_form(g, a2, b2, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("both integrated-population forms agree") {
    for (CaseLabel label : {CaseLabel::Midpoint, CaseLabel::Resonant}) {
        for (double g : {0.15, 0.4}) {
            const Run r = standard_run(label, g);
            const double direct = integrated_population(r.traj);
            const double buffered = integrated_population_buffer_form(r.traj, r.sc.channel.t0);
            CHECK(std::abs(direct - buffered) < 1e-4 * direct);

            const TransferReport rep = make_report(r.traj, r.syn.pulses, r.sc.channel);
            CHECK(rep.E_integrated == direct);
            CHECK(rep.E_over_t0 == doctest::Approx(direct / r.sc.channel.t0));
            CHECK(rep.buffer == doctest::Approx(rep.E_integrated - rep.t0));
        }
    }
}

TEST_CASE("buffer stays below one delay for a moderate pulse") {
    const Run r = standard_run(CaseLabel::Midpoint, 0.3);
    CHECK(std::abs(buffer_term(r.traj, r.sc.channel.t0)) < r.sc.channel.t0);
}

TEST_CASE("integrated population is almost invariant in the coupling") {
    const double e15 = integrated_population(standard_run(CaseLabel::Resonant, 0.15).traj);
    const double e40 = integrated_population(standard_run(CaseLabel::Resonant, 0.4).traj);
    CHECK(std::abs(e15 - e40) < 0.02 * e15);
}

TEST_CASE("loss estimate identities") {
    TransferReport rep;
    rep.T = 3.0;
    rep.E_integrated = 0.45;
    CHECK(loss_estimate(rep, 0.0, 0.0) == 0.0);
    CHECK(loss_estimate(rep, 0.01, 0.0) == doctest::Approx(0.0045));
    CHECK(loss_estimate(rep, 0.02, 0.02) == doctest::Approx(0.06));
}

TEST_CASE("report fields") {
    const Run r = standard_run(CaseLabel::Midpoint, 0.3);
    const TransferReport rep = make_report(r.traj, r.syn.pulses, r.sc.channel, LossRates{0.01, 0.0});
    CHECK(rep.t_f == r.syn.pulses.t_f);
    CHECK(rep.T == doctest::Approx(rep.t_f - rep.t_i + rep.t0));
    CHECK(rep.final_infidelity < 1e-4);
    CHECK(rep.peak_channel_population > 0.0);
    CHECK(rep.peak_channel_population < 1.0);
    CHECK(rep.loss_estimate == doctest::Approx(0.01 * rep.E_integrated));
}

}
