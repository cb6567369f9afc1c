#include "adsc/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace adsc {

double integrated_population(const Trajectory& traj) {
    double total = 0.0;
    for (std::size_t n = 0; n < traj.grid.n_steps; ++n)
        total += 0.5 * traj.grid.dt * (traj.channel_population(n) + traj.channel_population(n + 1));
    return total;
}

double integrated_population_buffer_form(const TimeGrid& grid, const std::vector<double>& alpha2,
                                         const std::vector<double>& beta2, double t0) {
    const std::size_t n = std::min(alpha2.size(), beta2.size());
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double dq = (alpha2[j + 1] + beta2[j + 1]) - (alpha2[j] + beta2[j]);
        acc += 0.5 * (grid.at(j) + grid.at(j + 1)) * dq;
    }
    return t0 + acc;
}

double integrated_population_buffer_form(const Trajectory& traj, double t0) {
    const std::size_t window = traj.grid.steps_in(t0);
    const std::size_t n = traj.grid.n_steps + 1 - window;
    std::vector<double> a2(n), b2(n);
    for (std::size_t j = 0; j < n; ++j) {
        a2[j] = std::norm(traj.alpha[j]);
        b2[j] = std::norm(traj.beta[j + window]);
    }
    return integrated_population_buffer_form(traj.grid, a2, b2, t0);
}

double buffer_term(const Trajectory& traj, double t0) { return integrated_population(traj) - t0; }

double loss_estimate(const TransferReport& report, double kappa, double gamma) {
    if (kappa < 0.0 || gamma < 0.0) throw ConfigError("loss rates must be non-negative");
    return gamma * report.T + (kappa - gamma) * report.E_integrated;
}

TransferReport make_report(const Trajectory& traj, const PulsePair& pulses, const ChannelSpec& spec,
                           LossRates rates) {
    TransferReport r;
    r.t_i = pulses.grid().t_i;
    r.t_f = pulses.t_f;
    r.t0 = spec.t0;
    r.T = r.t_f - r.t_i + r.t0;
    r.E_integrated = integrated_population(traj);
    r.E_over_t0 = r.E_integrated / r.t0;
    r.E_buffer_form = integrated_population_buffer_form(traj, spec.t0);
    r.buffer = r.E_integrated - r.t0;
    for (std::size_t n = 0; n <= traj.grid.n_steps; ++n)
        r.peak_channel_population = std::max(r.peak_channel_population, traj.channel_population(n));
    r.final_infidelity = 1.0 - std::norm(traj.beta.back());
    r.kappa = rates.kappa;
    r.gamma = rates.gamma;
    r.loss_estimate = loss_estimate(r, rates.kappa, rates.gamma);
    return r;
}

}  // namespace adsc
