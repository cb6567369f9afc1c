#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "adsc/channel.hpp"
#include "adsc/grid.hpp"
#include "adsc/synthesis.hpp"

namespace adsc {

struct ValidatorOptions {
    double onset_window = 0.3;  // receiver onset integrated in sqrt(t - t_i - t0)
    int onset_substeps = 8;     // RK4 steps per output step inside the onset window
    double norm_tol = 1e-6;
    double extra_time = 0.0;    // evolve past t_f + t0
};

struct LossRates {
    double kappa = 0.0;  // angular
    double gamma = 0.0;  // angular
};

struct Trajectory {
    TimeGrid grid;  // [t_i, t_f + t0 + extra]
    std::vector<cplx> alpha;
    std::vector<cplx> beta;
    std::vector<std::vector<cplx>> c_modes;  // [mode][node]
    std::vector<double> norm;

    double channel_population(std::size_t n) const;
};

Trajectory evolve_single_excitation(const ChannelSpec& spec, const PulsePair& pulses,
                                    const ValidatorOptions& opts = {});

Trajectory evolve_with_loss(const ChannelSpec& spec, const PulsePair& pulses, LossRates rates,
                            const ValidatorOptions& opts = {});

struct LossOutcome {
    double inefficiency = 0.0;
    double t_stop = 0.0;
};

// 1 - |beta|^2 at the end, or at its minimum over the run when gamma > 0.
LossOutcome loss_inefficiency(const Trajectory& traj, LossRates rates);

struct Discrepancy {
    double alpha = 0.0;  // max | |alpha|^2_val - |alpha|^2_adsc |
    double beta = 0.0;   // max | |beta(t+t0)|^2_val - |beta~|^2_adsc |
    double max() const { return alpha > beta ? alpha : beta; }
};

Discrepancy compare(const Trajectory& traj, const SynthesisTrace& trace, double t0);

struct LeakageReport {
    double inefficiency = 0.0;
    double baseline = 0.0;           // single-excitation inefficiency of the same pulses
    double pop_2B_over_er = 0.0;
    double pop_doubly_over_er = 0.0; // |2_A>, |2_B>, |1_A 1_B>
    double residual_channel = 0.0;
    double norm_drift = 0.0;
    std::vector<std::string> basis;  // two-excitation basis labels
    std::vector<double> final_populations;
};

LeakageReport evolve_leakage(const ChannelSpec& spec, const PulsePair& pulses, double er,
                             double anharm, const ValidatorOptions& opts = {});

// Two-excitation basis labels in their fixed order.
std::vector<std::string> two_excitation_basis(const ChannelSpec& spec);

struct HeisenbergReport {
    TimeGrid grid;
    double unitarity_error = 0.0;       // max over nodes of max |U^H U - I|
    double row_norm_error = 0.0;        // max over nodes of |sum_j |U_bj|^2 - 1|
    cplx transfer = 0.0;                // U_{b,a} at the end
    double single_excitation_beta = 0.0;
    std::vector<double> row_norm;       // b-row norm per node
    std::vector<double> thermal_weight; // sum_k |U_bk|^2 at the end, per unit n_th
};

HeisenbergReport evolve_linear_heisenberg(const ChannelSpec& spec, const PulsePair& pulses,
                                          const ValidatorOptions& opts = {});

}  // namespace adsc
