#pragma once

#include <cstddef>
#include <vector>

#include "adsc/channel.hpp"
#include "adsc/grid.hpp"
#include "adsc/ide.hpp"

namespace adsc {

struct SynthesisOptions {
    double alpha_cutoff = 1e-8;
    double clamp_eps = 1e-10;
    double g_max = to_angular(50.0);
    int substeps = 4;
    double deficit_tol = 1e-8;
    bool require_emptied = true;
};

struct PulsePair {
    SampledSignal gA;          // grid [t_i, t_f]
    SampledSignal gB_tilde;    // capped receiver pulse on the same grid
    SampledSignal gB_regular;  // gB_tilde * sqrt(t - t_i), uncapped and finite
    double t_f = 0.0;
    double clamp_eps = 0.0;
    double g_max = 0.0;
    double capped_interval = 0.0;
    double onset_rate = 0.0;   // d|beta~|^2/dt at t_i

    const TimeGrid& grid() const { return gA.grid; }
    // Physical receiver coupling g_B(t) = exp(-i phi0) g~_B(t - t0), singular part
    // exact; zero up to and including the onset instant.
    cplx receiver(const ChannelSpec& spec, double t) const;
};

struct SynthesisTrace {
    SampledSignal alpha;
    SampledSignal x;
    SampledSignal y;
    SampledSignal beta_tilde;
    std::vector<double> beta_mag2;
    std::vector<double> beta_phase;
    SampledSignal x_fine;
    double floor_deficit = 0.0;
};

struct Synthesis {
    PulsePair pulses;
    SynthesisTrace trace;
};

Synthesis synthesize_receiver(const IdeSolution& sender, const ChannelSpec& spec,
                              const SynthesisOptions& opts = {});

// Solves the sender equation for `scenario` and synthesizes the receiver.
Synthesis synthesize(const Scenario& scenario, const SynthesisOptions& opts = {});

// c_k(t) = -i int_{t-t0}^{t} x(tau) e^{i delta_k tau} dtau, x piecewise linear.
std::vector<cplx> reconstruct_channel_amplitudes(const SampledSignal& x, const ChannelSpec& spec,
                                                 double t);

// |c~_k(t_f)| from the dark-state residual. beta_tilde is sampled on the pulse
// grid; the onset node uses the sqrt(t - t_i) limit of beta_tilde.
std::vector<double> terminal_residual(const SampledSignal& gA, const SampledSignal& alpha,
                                      const SampledSignal& gB_regular,
                                      const SampledSignal& beta_tilde, const ChannelSpec& spec);

}  // namespace adsc
