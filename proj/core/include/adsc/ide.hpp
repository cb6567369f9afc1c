#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "adsc/channel.hpp"
#include "adsc/grid.hpp"

namespace adsc {

using CouplingFn = std::function<cplx(double)>;

enum class WindowDirection { Decay, Growth };

struct IdeOptions {
    int substeps = 4;          // internal steps per output step
    double stop_below = 0.0;   // freeze once |amp|^2 < stop_below at an output node
};

// Solution on the output grid plus the internal fine grid used by synthesis.
struct IdeSolution {
    SampledSignal amplitude;
    std::size_t stop_index = 0;  // output node where the stop criterion fired (or n_steps)
    bool stopped = false;

    double h = 0.0;              // fine step
    int substeps = 1;
    std::vector<cplx> fine_coupling;
    std::vector<cplx> fine_amplitude;
    std::vector<cplx> fine_window;  // window integral at each fine node
};

// Decay variant: amp' = -f(t) * int_{max(t-t0,t_i)}^{t} K(t-tau) conj(f(tau)) amp(tau) dtau.
IdeSolution solve_decay_ide(const ChannelSpec& spec, const CouplingFn& f, const TimeGrid& grid,
                            cplx init, const IdeOptions& opts = {});

// Decay: init is amp(t_i). Growth: window [t, t+t0], init is amp(t_end), solved
// backwards in time. The coupling is the linear interpolant of `f`.
SampledSignal solve_windowed_ide(const ChannelSpec& spec, const SampledSignal& f,
                                 WindowDirection direction, const TimeGrid& grid, cplx init,
                                 const IdeOptions& opts = {});

// Gauss-Legendre quadrature of the window integral at a fine node, using the
// solver's piecewise-linear integrand; reference for fine_window.
cplx window_integral_bruteforce(const ChannelSpec& spec, const IdeSolution& sol,
                                std::size_t fine_node);

struct RichardsonResult {
    double order = 0.0;  // NaN when both differences vanish
    double diff_coarse = 0.0;
    double diff_fine = 0.0;
};

// Refinement study of |amp|^2 on nodes shared by dt, dt/2, dt/4.
RichardsonResult richardson_from_samples(const std::vector<double>& coarse,
                                         const std::vector<double>& mid,
                                         const std::vector<double>& fine);

RichardsonResult richardson_check(const ChannelSpec& spec, const CouplingFn& f,
                                  const TimeGrid& grid, const IdeOptions& opts = {});

}  // namespace adsc
