#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "adsc/channel.hpp"
#include "adsc/synthesis.hpp"
#include "adsc/validator.hpp"

namespace adsc::app {

using json = nlohmann::json;

struct NoiseParams {
    double kappa = 0.0;  // angular
    double gamma = 0.0;  // angular
    double er = 0.0;
    double anharm = to_angular(2.5);
    double n_th = 0.0;
};

struct PoleConfig {
    std::vector<double> g;  // fsr units
    bool single_qubit = false;
    std::optional<Box> box;  // fsr units
};

struct SweepConfig {
    std::string parameter = "g";
    std::vector<double> values;
};

struct RunConfig {
    Scenario scenario;
    int modes_per_side = 3;
    double fsr = 1.0;
    SynthesisOptions synthesis;
    ValidatorOptions validator;
    NoiseParams noise;
    PoleConfig poles;
    SweepConfig sweep;
    json source;  // effective configuration after overrides
};

json default_config();

// Reads a JSON file; ConfigError on missing file or parse failure.
json load_config_file(const std::string& path);

// Applies "dotted.key=value"; the value is parsed as JSON, else kept as a string.
void apply_override(json& cfg, const std::string& assignment);

// Merges `user` over the defaults and validates every field.
RunConfig parse_config(const json& user);

// Returns a copy of `cfg` with one numeric field replaced, for sweeps.
RunConfig with_parameter(const RunConfig& cfg, const std::string& name, double value);

}  // namespace adsc::app
