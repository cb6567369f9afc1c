#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "adsc/diagnostics.hpp"
#include "adsc/poles.hpp"
#include "adsc/synthesis.hpp"
#include "adsc/validator.hpp"

namespace adsc::app {

// Shortest round-trip decimal form.
std::string num(double v);

void write_pulses_csv(std::ostream& out, const PulsePair& pulses);
PulsePair read_pulses_csv(std::istream& in);

void write_trace_csv(std::ostream& out, const SynthesisTrace& trace);
// Restores alpha and |beta~|^2; other trace fields are left empty.
SynthesisTrace read_trace_csv(std::istream& in);

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const ChannelSpec& spec);

struct PoleRow {
    double g;
    cplx s;  // fsr units
    double residual;
};
void write_poles_csv(std::ostream& out, const std::vector<PoleRow>& rows);

nlohmann::json to_json(const TransferReport& r);
nlohmann::json to_json(const Discrepancy& d);

// Writes text to `path`, creating parent directories; ConfigError on failure.
void write_file(const std::string& path, const std::string& text);

}  // namespace adsc::app
