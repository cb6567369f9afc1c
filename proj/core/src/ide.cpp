#include "adsc/ide.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "expint.hpp"

namespace adsc {

namespace {

struct ModeWeights {
    cplx ez, hp1, a, b, qa, qb, rho;
};

}  // namespace

IdeSolution solve_decay_ide(const ChannelSpec& spec, const CouplingFn& f, const TimeGrid& grid,
                            cplx init, const IdeOptions& opts) {
    if (opts.substeps < 1) throw ConfigError("substeps must be at least 1");
    const std::size_t m = static_cast<std::size_t>(opts.substeps);
    const std::size_t window = grid.steps_in(spec.t0) * m;
    const std::size_t nf = grid.n_steps * m;
    const double h = grid.dt / static_cast<double>(m);
    const std::size_t modes = spec.modes();

    IdeSolution sol;
    sol.h = h;
    sol.substeps = opts.substeps;
    sol.stop_index = grid.n_steps;
    sol.fine_coupling.resize(nf + 1);
    sol.fine_amplitude.assign(nf + 1, cplx{});
    sol.fine_window.assign(nf + 1, cplx{});
    for (std::size_t j = 0; j <= nf; ++j) sol.fine_coupling[j] = f(grid.t_i + static_cast<double>(j) * h);

    std::vector<ModeWeights> w(modes);
    for (std::size_t k = 0; k < modes; ++k) {
        const detail::Phi p = detail::phi_functions(-kI * spec.delta[k] * h);
        w[k] = {p.e,
                h * p.p1,
                h * (p.p1 - p.p2),
                h * p.p2,
                h * h * (p.p2 - p.p3),
                h * h * p.p3,
                std::exp(-kI * spec.delta[k] * spec.t0)};
    }
    const cplx sum_qb = spec.mode_sum([&](std::size_t k) { return w[k].qb; });

    std::vector<cplx> v(modes, cplx{});
    std::vector<cplx> qpart(modes);
    std::vector<cplx> term(modes);
    std::vector<cplx> q_ring(window * modes, cplx{});  // step integrals of v, lag window
    std::vector<cplx> v_ring(window * modes, cplx{});  // v at lag window

    const auto& g = sol.fine_coupling;
    auto& amp = sol.fine_amplitude;
    amp[0] = init;
    cplx x = std::conj(g[0]) * init;
    bool frozen = false;

    for (std::size_t n = 0; n < nf; ++n) {
        if (frozen) {
            amp[n + 1] = amp[n];
            continue;
        }
        const std::size_t slot = (n % window) * modes;
        const bool lagged = n >= window;

        const cplx gbar = 0.5 * (g[n] + g[n + 1]);
        for (std::size_t k = 0; k < modes; ++k) {
            qpart[k] = w[k].hp1 * v[k] + w[k].qa * x;
            term[k] = lagged ? qpart[k] - w[k].rho * q_ring[slot + k] : qpart[k];
        }
        const cplx s = spec.mode_sum([&](std::size_t k) { return term[k]; });
        const cplx gn1c = std::conj(g[n + 1]);
        const cplx next = (amp[n] - gbar * s) / (1.0 + gbar * gn1c * sum_qb);
        const cplx x_next = gn1c * next;

        for (std::size_t k = 0; k < modes; ++k) {
            q_ring[slot + k] = qpart[k] + w[k].qb * x_next;
            v[k] = w[k].ez * v[k] + w[k].a * x + w[k].b * x_next;
        }
        // Window integral at node n+1: v(t) - rho v(t - t0).
        const std::size_t slot_next = ((n + 1) % window) * modes;
        const bool lagged_next = n + 1 >= window;
        for (std::size_t k = 0; k < modes; ++k) {
            term[k] = v[k];
            if (lagged_next) term[k] -= w[k].rho * v_ring[slot_next + k];
        }
        sol.fine_window[n + 1] = spec.mode_sum([&](std::size_t k) { return term[k]; });
        for (std::size_t k = 0; k < modes; ++k) v_ring[slot_next + k] = v[k];

        if (!std::isfinite(next.real()) || !std::isfinite(next.imag()))
            throw NumericalFailure("non-finite amplitude in integro-differential solve at t = " +
                                       std::to_string(grid.t_i + static_cast<double>(n + 1) * h),
                                   grid.t_i + static_cast<double>(n + 1) * h);
        amp[n + 1] = next;
        x = x_next;

        if (opts.stop_below > 0.0 && (n + 1) % m == 0 && std::norm(next) < opts.stop_below) {
            frozen = true;
            sol.stopped = true;
            sol.stop_index = (n + 1) / m;
        }
    }

    std::vector<cplx> coarse(grid.size());
    for (std::size_t i = 0; i <= grid.n_steps; ++i) coarse[i] = amp[i * m];
    sol.amplitude = SampledSignal(grid, std::move(coarse));
    return sol;
}

SampledSignal solve_windowed_ide(const ChannelSpec& spec, const SampledSignal& f,
                                 WindowDirection direction, const TimeGrid& grid, cplx init,
                                 const IdeOptions& opts) {
    if (f.grid.n_steps != grid.n_steps || f.grid.dt != grid.dt || f.grid.t_i != grid.t_i)
        throw ConfigError("coupling must be sampled on the solver grid");
    if (direction == WindowDirection::Decay) {
        return solve_decay_ide(spec, [&](double t) { return f.at(t); }, grid, init, opts).amplitude;
    }
    // Growth: reversing time maps the forward window onto a backward one with
    // the conjugate kernel, i.e. negated detunings.
    ChannelSpec mirrored = spec;
    for (double& d : mirrored.delta) d = -d;
    const double t_end = grid.t_end();
    TimeGrid reversed = grid;
    reversed.t_i = 0.0;
    const IdeSolution sol = solve_decay_ide(
        mirrored, [&](double s) { return f.at(t_end - s); }, reversed, init, opts);
    std::vector<cplx> out(grid.size());
    for (std::size_t n = 0; n <= grid.n_steps; ++n) out[n] = sol.amplitude[grid.n_steps - n];
    return SampledSignal(grid, std::move(out));
}

cplx window_integral_bruteforce(const ChannelSpec& spec, const IdeSolution& sol, std::size_t j) {
    static constexpr std::array<double, 8> node = {
        -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
        0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
    static constexpr std::array<double, 8> weight = {
        0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
        0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
    const double h = sol.h;
    const auto window = static_cast<std::size_t>(std::llround(spec.t0 / h));
    const std::size_t lo = j >= window ? j - window : 0;
    cplx total = 0.0;
    for (std::size_t i = lo; i < j; ++i) {
        const cplx xa = std::conj(sol.fine_coupling[i]) * sol.fine_amplitude[i];
        const cplx xb = std::conj(sol.fine_coupling[i + 1]) * sol.fine_amplitude[i + 1];
        cplx part = 0.0;
        for (std::size_t q = 0; q < node.size(); ++q) {
            const double u = 0.5 * (node[q] + 1.0);
            const double lag = (static_cast<double>(j - i) - u) * h;
            part += weight[q] * kernel_eval(spec, lag) * ((1.0 - u) * xa + u * xb);
        }
        total += 0.5 * h * part;
    }
    return total;
}

RichardsonResult richardson_from_samples(const std::vector<double>& coarse,
                                         const std::vector<double>& mid,
                                         const std::vector<double>& fine) {
    RichardsonResult r;
    for (std::size_t n = 0; n < coarse.size(); ++n) {
        if (2 * n >= mid.size() || 4 * n >= fine.size()) break;
        r.diff_coarse = std::max(r.diff_coarse, std::abs(coarse[n] - mid[2 * n]));
        r.diff_fine = std::max(r.diff_fine, std::abs(mid[2 * n] - fine[4 * n]));
    }
    if (r.diff_coarse == 0.0 && r.diff_fine == 0.0) {
        r.order = std::numeric_limits<double>::quiet_NaN();
        return r;
    }
    if (!(r.diff_fine < r.diff_coarse))
        throw NumericalFailure("refinement does not converge", 0.0);
    r.order = std::log2(r.diff_coarse / r.diff_fine);
    return r;
}

RichardsonResult richardson_check(const ChannelSpec& spec, const CouplingFn& f, const TimeGrid& grid,
                                  const IdeOptions& opts) {
    std::array<std::vector<double>, 3> mag2;
    for (int level = 0; level < 3; ++level) {
        const double dt = grid.dt / static_cast<double>(1 << level);
        const TimeGrid g = TimeGrid::span(grid.t_i, grid.t_end(), dt);
        const IdeSolution sol = solve_decay_ide(spec, f, g, 1.0, opts);
        for (cplx a : sol.amplitude.values) mag2[level].push_back(std::norm(a));
    }
    return richardson_from_samples(mag2[0], mag2[1], mag2[2]);
}

}  // namespace adsc
