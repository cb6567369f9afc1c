#include "adsc/grid.hpp"

#include <cmath>
#include <string>

namespace adsc {

TimeGrid TimeGrid::span(double t_i, double t_end, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
    if (!(t_end >= t_i)) throw ConfigError("grid end precedes start");
    const double steps = (t_end - t_i) / dt;
    TimeGrid g;
    g.t_i = t_i;
    g.dt = dt;
    g.n_steps = static_cast<std::size_t>(std::llround(steps));
    return g;
}

std::size_t TimeGrid::steps_in(double duration) const {
    const double ratio = duration / dt;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
        throw ConfigError("t0 must be an integer multiple of dt (t0/dt = " + std::to_string(ratio) + ")");
    return static_cast<std::size_t>(rounded);
}

SampledSignal::SampledSignal(TimeGrid g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) throw ConfigError("signal length does not match grid");
}

cplx SampledSignal::at(double t) const {
    const double u = (t - grid.t_i) / grid.dt;
    const double last = static_cast<double>(grid.n_steps);
    if (u < -1e-9 || u > last + 1e-9) return 0.0;
    if (u <= 0.0) return values.front();
    if (u >= last) return values.back();
    const double fl = std::floor(u);
    const auto n = static_cast<std::size_t>(fl);
    const double f = u - fl;
    if (f == 0.0) return values[n];
    return (1.0 - f) * values[n] + f * values[n + 1];
}

}  // namespace adsc
