#pragma once

#include <cstddef>
#include <vector>

#include "adsc/types.hpp"

namespace adsc {

struct TimeGrid {
    double t_i = 0.0;
    double dt = 0.002;
    std::size_t n_steps = 0;

    static TimeGrid span(double t_i, double t_end, double dt);

    double at(std::size_t n) const { return t_i + static_cast<double>(n) * dt; }
    double t_end() const { return at(n_steps); }
    std::size_t size() const { return n_steps + 1; }

    // Number of steps in `duration`; ConfigError if not an integer multiple of dt.
    std::size_t steps_in(double duration) const;
};

// Samples on grid nodes, zero outside [t_i, t_end]; linear between nodes.
struct SampledSignal {
    TimeGrid grid;
    std::vector<cplx> values;

    SampledSignal() = default;
    explicit SampledSignal(TimeGrid g) : grid(g), values(g.size(), cplx{}) {}
    SampledSignal(TimeGrid g, std::vector<cplx> v);

    cplx at(double t) const;
    cplx operator[](std::size_t n) const { return values[n]; }
    std::size_t size() const { return values.size(); }
};

}  // namespace adsc
