#pragma once

#include <vector>

#include "adsc/synthesis.hpp"
#include "adsc/validator.hpp"

namespace adsc {

struct TransferReport {
    double t_i = 0.0;
    double t_f = 0.0;
    double t0 = 0.0;
    double T = 0.0;
    double E_integrated = 0.0;
    double E_over_t0 = 0.0;
    double E_buffer_form = 0.0;
    double buffer = 0.0;
    double peak_channel_population = 0.0;
    double final_infidelity = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;
    double loss_estimate = 0.0;
};

// Trapezoidal integral of the total channel population.
double integrated_population(const Trajectory& traj);

// t0 + int_{t_i}^{t_f} t d(|alpha|^2 + |beta(t+t0)|^2), from the trajectory.
double integrated_population_buffer_form(const Trajectory& traj, double t0);

// Same expression from sampled |alpha|^2 and |beta~|^2 on a common grid.
double integrated_population_buffer_form(const TimeGrid& grid, const std::vector<double>& alpha2,
                                         const std::vector<double>& beta2, double t0);

double buffer_term(const Trajectory& traj, double t0);

double loss_estimate(const TransferReport& report, double kappa, double gamma);

TransferReport make_report(const Trajectory& traj, const PulsePair& pulses, const ChannelSpec& spec,
                           LossRates rates = {});

}  // namespace adsc
