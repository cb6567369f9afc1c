#include "adsc/channel.hpp"

#include <cmath>
#include <string>

namespace adsc {

const char* to_string(CaseLabel label) {
    return label == CaseLabel::Midpoint ? "midpoint" : "resonant";
}

CaseLabel case_from_string(const std::string& name) {
    if (name == "midpoint" || name == "1" || name == "case1") return CaseLabel::Midpoint;
    if (name == "resonant" || name == "2" || name == "case2") return CaseLabel::Resonant;
    throw ConfigError("unknown case '" + name + "' (expected midpoint or resonant)");
}

ChannelSpec make_channel(std::vector<double> delta_fsr_units, std::vector<int> parity,
                         double fsr_units, double omega0_phase) {
    if (!(fsr_units > 0.0)) throw ConfigError("fsr must be positive");
    if (delta_fsr_units.size() != parity.size())
        throw ConfigError("detuning and parity lists differ in length");
    ChannelSpec spec;
    spec.fsr = to_angular(fsr_units);
    spec.t0 = kPi / spec.fsr;
    spec.omega0_phase = omega0_phase;
    spec.parity = std::move(parity);
    spec.delta.reserve(delta_fsr_units.size());
    for (double d : delta_fsr_units) spec.delta.push_back(d * spec.fsr);

    const std::size_t m = spec.delta.size();
    std::vector<bool> used(m, false);
    const double tol = 1e-9 * spec.fsr;
    for (std::size_t k = 0; k < m; ++k) {
        if (used[k]) continue;
        used[k] = true;
        int partner = -1;
        if (std::abs(spec.delta[k]) > tol) {
            for (std::size_t j = k + 1; j < m; ++j) {
                if (!used[j] && std::abs(spec.delta[j] + spec.delta[k]) < tol) {
                    partner = static_cast<int>(j);
                    used[j] = true;
                    break;
                }
            }
        }
        spec.groups.push_back({static_cast<int>(k), partner});
    }
    return spec;
}

void check_invariants(const ChannelSpec& spec) {
    if (spec.delta.empty()) throw ConfigError("channel has no modes");
    if (spec.parity.size() != spec.delta.size()) throw ConfigError("parity and detuning lists differ in length");
    if (std::abs(spec.t0 * spec.fsr - kPi) > 1e-12 * kPi)
        throw ConfigError("t0 * fsr must equal pi");
    for (std::size_t k = 1; k < spec.delta.size(); ++k) {
        if (!(spec.delta[k] > spec.delta[k - 1]))
            throw ConfigError("detunings must be strictly increasing");
        if (std::abs(spec.delta[k] - spec.delta[k - 1] - spec.fsr) > 1e-9 * spec.fsr)
            throw ConfigError("adjacent detunings must differ by exactly fsr");
        if (spec.parity[k] != -spec.parity[k - 1])
            throw ConfigError("parity must alternate between adjacent modes");
    }
    const cplx shift = std::exp(-kI * spec.omega0_phase);
    for (std::size_t k = 0; k < spec.delta.size(); ++k) {
        if (spec.parity[k] != 1 && spec.parity[k] != -1) throw ConfigError("parity must be +1 or -1");
        const cplx lhs = std::exp(kI * spec.delta[k] * spec.t0);
        if (std::abs(lhs - static_cast<double>(spec.parity[k]) * shift) > 1e-9)
            throw ConfigError("parity identity exp(i delta t0) = parity exp(-i phi0) violated at mode " +
                              std::to_string(k));
    }
}

cplx kernel_eval(const ChannelSpec& spec, double dt) {
    return spec.mode_sum([&](std::size_t k) { return std::exp(-kI * spec.delta[k] * dt); });
}

ChannelSpec build_channel(CaseLabel label, int modes_per_side, double fsr_units) {
    if (modes_per_side < 1) throw ConfigError("modes_per_side must be at least 1");
    std::vector<double> delta;
    std::vector<int> parity;
    double phase = 0.0;
    if (label == CaseLabel::Midpoint) {
        for (int m = -modes_per_side; m < modes_per_side; ++m) {
            delta.push_back(m + 0.5);
            parity.push_back((m % 2 == 0) ? -1 : 1);
        }
        phase = kPi / 2.0;
    } else {
        for (int m = -modes_per_side; m <= modes_per_side; ++m) {
            delta.push_back(m);
            parity.push_back((m % 2 == 0) ? 1 : -1);
        }
    }
    ChannelSpec spec = make_channel(std::move(delta), std::move(parity), fsr_units, phase);
    check_invariants(spec);
    return spec;
}

Scenario build_case(CaseLabel label, int modes_per_side, double fsr_units) {
    Scenario sc;
    sc.channel = build_channel(label, modes_per_side, fsr_units);
    sc.case_label = label;
    const double dt = label == CaseLabel::Midpoint ? 0.002 : 0.001;
    sc.grid = TimeGrid::span(0.0, 40.0, dt);
    sc.pulse = SenderPulse::sine(0.3);
    return sc;
}

}  // namespace adsc
