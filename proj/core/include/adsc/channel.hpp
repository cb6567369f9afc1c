#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "adsc/grid.hpp"
#include "adsc/pulse.hpp"
#include "adsc/types.hpp"

namespace adsc {

enum class CaseLabel { Midpoint, Resonant };

const char* to_string(CaseLabel label);
CaseLabel case_from_string(const std::string& name);

struct ChannelSpec {
    std::vector<double> delta;  // angular detunings
    std::vector<int> parity;
    double fsr = kTwoPi;        // angular
    double t0 = 0.5;
    double omega0_phase = 0.0;

    // Mirror partners (delta_j == -delta_k) grouped so sums over modes can
    // cancel imaginary parts exactly. Second index is -1 for unpaired modes.
    std::vector<std::array<int, 2>> groups;

    std::size_t modes() const { return delta.size(); }

    template <class F>
    cplx mode_sum(F&& term) const {
        cplx total = 0.0;
        for (const auto& g : groups) {
            cplx s = term(static_cast<std::size_t>(g[0]));
            if (g[1] >= 0) s += term(static_cast<std::size_t>(g[1]));
            total += s;
        }
        return total;
    }
};

// Builds a spec from detunings given in fsr units; fills the mirror groups.
ChannelSpec make_channel(std::vector<double> delta_fsr_units, std::vector<int> parity,
                         double fsr_units, double omega0_phase);

// Throws ConfigError naming the violated invariant.
void check_invariants(const ChannelSpec& spec);

cplx kernel_eval(const ChannelSpec& spec, double dt);

struct Scenario {
    ChannelSpec channel;
    CaseLabel case_label = CaseLabel::Midpoint;
    TimeGrid grid;
    SenderPulse pulse;
};

ChannelSpec build_channel(CaseLabel label, int modes_per_side, double fsr_units = 1.0);

// Default grid: t_i = 0, t_max = 40, dt = 0.002 (Midpoint) or 0.001 (Resonant).
Scenario build_case(CaseLabel label, int modes_per_side, double fsr_units = 1.0);

}  // namespace adsc
