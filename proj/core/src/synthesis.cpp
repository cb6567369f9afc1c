#include "adsc/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "expint.hpp"

namespace adsc {

cplx PulsePair::receiver(const ChannelSpec& spec, double t) const {
    const double s = t - gA.grid.t_i - spec.t0;
    const cplx shift = std::exp(-kI * spec.omega0_phase);
    if (s <= 0.0) return 0.0;
    return shift * gB_regular.at(gA.grid.t_i + s) / std::sqrt(s);
}

Synthesis synthesize_receiver(const IdeSolution& sender, const ChannelSpec& spec,
                              const SynthesisOptions& opts) {
    if (!(opts.clamp_eps > 0.0)) throw ConfigError("clamp_eps must be positive");
    if (!(opts.g_max > 0.0)) throw ConfigError("g_max must be positive");
    const TimeGrid& grid = sender.amplitude.grid;
    const std::size_t m = static_cast<std::size_t>(sender.substeps);
    const double h = sender.h;
    const std::size_t modes = spec.modes();

    std::size_t n_f = grid.n_steps;
    bool emptied = false;
    for (std::size_t n = 0; n <= grid.n_steps; ++n) {
        if (std::norm(sender.amplitude[n]) < opts.alpha_cutoff) {
            n_f = n;
            emptied = true;
            break;
        }
    }
    if (!emptied && opts.require_emptied)
        throw SynthesisRefused("pulse does not empty the sender: |alpha|^2 stays above " +
                               std::to_string(opts.alpha_cutoff) + " up to t = " +
                               std::to_string(grid.t_end()));

    const std::size_t nfine = n_f * m;
    const std::size_t window = grid.steps_in(spec.t0) * m;

    std::vector<cplx> x(nfine + 1);
    for (std::size_t j = 0; j <= nfine; ++j)
        x[j] = std::conj(sender.fine_coupling[j]) * sender.fine_amplitude[j];

    // Backward running integrals w_k(t) = int_t^inf e^{i delta_k (tau - t)} x(tau) dtau.
    std::vector<cplx> w((nfine + 1) * modes, cplx{});
    for (std::size_t k = 0; k < modes; ++k) {
        const detail::Phi p = detail::phi_functions(kI * spec.delta[k] * h);
        const cplx a = h * p.p2, b = h * (p.p1 - p.p2);
        cplx acc = 0.0;
        for (std::size_t j = nfine; j-- > 0;) {
            acc = p.e * acc + a * x[j] + b * x[j + 1];
            w[j * modes + k] = acc;
        }
    }
    std::vector<cplx> rho(modes);
    for (std::size_t k = 0; k < modes; ++k) rho[k] = std::exp(kI * spec.delta[k] * spec.t0);

    std::vector<cplx> y(nfine + 1);
    for (std::size_t j = 0; j <= nfine; ++j) {
        const std::size_t lag = j + window;
        y[j] = spec.mode_sum([&](std::size_t k) {
            const cplx ahead = lag <= nfine ? w[lag * modes + k] : cplx{};
            return w[j * modes + k] - rho[k] * ahead;
        });
    }

    std::vector<double> src(nfine + 1), rate(nfine + 1);
    for (std::size_t j = 0; j <= nfine; ++j) {
        const cplx p = std::conj(x[j]) * y[j];
        src[j] = 2.0 * p.real();
        rate[j] = p.imag();
    }

    std::vector<double> b2(nfine + 1, 0.0), phase(nfine + 1, 0.0);
    double deficit = 0.0;
    const double clamp2 = opts.clamp_eps * opts.clamp_eps;
    for (std::size_t j = 0; j < nfine; ++j) {
        const double next = b2[j] + 0.5 * h * (src[j] + src[j + 1]);
        if (next < 0.0) deficit += -next;
        b2[j + 1] = std::max(0.0, next);
    }
    if (deficit > opts.deficit_tol)
        throw InconsistentScenario("receiver population would turn negative (clipped deficit " +
                                   std::to_string(deficit) + ")");
    auto phase_rate = [&](std::size_t j) { return b2[j] > 0.0 ? rate[j] / std::max(b2[j], clamp2) : 0.0; };
    for (std::size_t j = 0; j < nfine; ++j)
        phase[j + 1] = phase[j] + 0.5 * h * (phase_rate(j) + phase_rate(j + 1));

    const TimeGrid pulse_grid{grid.t_i, grid.dt, n_f};
    Synthesis out;
    PulsePair& pp = out.pulses;
    SynthesisTrace& tr = out.trace;
    pp.gA = SampledSignal(pulse_grid);
    pp.gB_tilde = SampledSignal(pulse_grid);
    pp.gB_regular = SampledSignal(pulse_grid);
    pp.t_f = pulse_grid.t_end();
    pp.clamp_eps = opts.clamp_eps;
    pp.g_max = opts.g_max;
    pp.onset_rate = src[0];
    tr.alpha = SampledSignal(pulse_grid);
    tr.x = SampledSignal(pulse_grid);
    tr.y = SampledSignal(pulse_grid);
    tr.beta_tilde = SampledSignal(pulse_grid);
    tr.beta_mag2.resize(n_f + 1);
    tr.beta_phase.resize(n_f + 1);
    tr.floor_deficit = deficit;
    tr.x_fine = SampledSignal(TimeGrid{grid.t_i, h, nfine}, x);

    std::size_t capped = 0;
    for (std::size_t n = 0; n <= n_f; ++n) {
        const std::size_t j = n * m;
        const double s = static_cast<double>(n) * grid.dt;
        const cplx beta = std::sqrt(b2[j]) * std::exp(kI * phase[j]);
        pp.gA.values[n] = sender.fine_coupling[j];
        tr.alpha.values[n] = sender.fine_amplitude[j];
        tr.x.values[n] = x[j];
        tr.y.values[n] = y[j];
        tr.beta_tilde.values[n] = beta;
        tr.beta_mag2[n] = b2[j];
        tr.beta_phase[n] = phase[j];

        cplx regular = 0.0;
        if (b2[j] > 0.0) {
            const double mag = std::max(std::sqrt(b2[j]), opts.clamp_eps);
            regular = -std::conj(x[j]) * std::sqrt(s) / (mag * std::exp(-kI * phase[j]));
        } else if (n == 0 && src[0] > 0.0) {
            regular = -std::conj(x[0]) / std::sqrt(src[0]);
        }
        pp.gB_regular.values[n] = regular;

        // The onset node is singular whenever the regular part is nonzero there.
        cplx gb = n > 0 ? regular / std::sqrt(s) : cplx{};
        if (n == 0 && regular != cplx{}) {
            gb = regular / std::abs(regular) * opts.g_max;
            ++capped;
        } else if (std::abs(gb) > opts.g_max) {
            gb = regular / std::abs(regular) * opts.g_max;
            ++capped;
        }
        pp.gB_tilde.values[n] = gb;
    }
    pp.capped_interval = static_cast<double>(capped) * grid.dt;
    return out;
}

Synthesis synthesize(const Scenario& scenario, const SynthesisOptions& opts) {
    IdeOptions ide;
    ide.substeps = opts.substeps;
    ide.stop_below = opts.alpha_cutoff;
    const SenderPulse pulse = scenario.pulse;
    const IdeSolution sender =
        solve_decay_ide(scenario.channel, [&](double t) { return pulse(t); }, scenario.grid, 1.0, ide);
    return synthesize_receiver(sender, scenario.channel, opts);
}

std::vector<cplx> reconstruct_channel_amplitudes(const SampledSignal& x, const ChannelSpec& spec, double t) {
    const TimeGrid& g = x.grid;
    const double lo = std::max(t - spec.t0, g.t_i);
    const double hi = std::min(t, g.t_end());
    std::vector<cplx> c(spec.modes(), cplx{});
    if (!(hi > lo)) return c;
    const auto first = static_cast<std::size_t>(std::floor((lo - g.t_i) / g.dt + 1e-9));
    for (std::size_t k = 0; k < spec.modes(); ++k) {
        cplx acc = 0.0;
        for (std::size_t n = first; n < g.n_steps; ++n) {
            const double a = std::max(g.at(n), lo);
            const double b = std::min(g.at(n + 1), hi);
            if (b <= a) {
                if (g.at(n) >= hi) break;
                continue;
            }
            acc += detail::exp_linear_integral(spec.delta[k], a, b, x.at(a), x.at(b));
        }
        c[k] = -kI * acc;
    }
    return c;
}

std::vector<double> terminal_residual(const SampledSignal& gA, const SampledSignal& alpha,
                                      const SampledSignal& gB_regular, const SampledSignal& beta_tilde,
                                      const ChannelSpec& spec) {
    const TimeGrid& g = gA.grid;
    const std::size_t n = g.n_steps;
    std::vector<cplx> r(n + 1);
    std::vector<cplx> scaled(n + 1);  // beta~ / sqrt(t - t_i)
    for (std::size_t j = 1; j <= n; ++j) scaled[j] = beta_tilde[j] / std::sqrt(static_cast<double>(j) * g.dt);
    if (n >= 2) scaled[0] = 2.0 * scaled[1] - scaled[2];
    else if (n == 1) scaled[0] = scaled[1];
    for (std::size_t j = 0; j <= n; ++j)
        r[j] = std::conj(gA[j]) * alpha[j] + std::conj(gB_regular[j]) * scaled[j];

    std::vector<double> out(spec.modes(), 0.0);
    for (std::size_t k = 0; k < spec.modes(); ++k) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += detail::exp_linear_integral(spec.delta[k], g.at(j), g.at(j + 1), r[j], r[j + 1]);
        out[k] = std::abs(acc);
    }
    return out;
}

}  // namespace adsc
