#include "config.hpp"

#include <fstream>
#include <sstream>

namespace adsc::app {

json default_config() {
    return json{
        {"case", "midpoint"},
        {"modes_per_side", 3},
        {"fsr", 1.0},
        {"grid", {{"t_i", 0.0}, {"t_max", 40.0}, {"dt", nullptr}}},
        {"pulse", {{"shape", "sine"}, {"g", 0.3}, {"center", 5.0}, {"scale", 10.0 * kPi}}},
        {"synthesis",
         {{"alpha_cutoff", 1e-8}, {"clamp_eps", 1e-10}, {"g_max", 50.0}, {"substeps", 4}, {"deficit_tol", 1e-8}}},
        {"validator", {{"onset_window", 0.3}, {"onset_substeps", 8}, {"norm_tol", 1e-6}, {"extra_time", 0.0}}},
        {"noise", {{"kappa", 0.0}, {"gamma", 0.0}, {"er", 0.0}, {"anharmonicity", 2.5}, {"n_th", 0.0}}},
        {"poles", {{"g", json::array()}, {"single_qubit", false}, {"box", nullptr}}},
        {"sweep", {{"parameter", "g"}, {"values", json::array()}}},
    };
}

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return json::parse(in, nullptr, true, true);
    } catch (const json::exception& e) {
        throw ConfigError("cannot parse config file '" + path + "': " + e.what());
    }
}

void apply_override(json& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like key=value: '" + assignment + "'");
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::exception&) {
        value = raw;
    }
    std::string pointer;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, '.')) {
        if (part.empty()) throw ConfigError("empty key segment in override '" + key + "'");
        pointer += "/" + part;
    }
    cfg[json::json_pointer(pointer)] = value;
}

namespace {

double number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_number()) throw ConfigError(where + "." + key + " must be a number");
    return j.at(key).get<double>();
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

std::vector<double> number_list(const json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>()};
    require(j.is_array(), where + " must be a list of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        require(v.is_number(), where + " must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

RunConfig parse_config(const json& user) {
    require(user.is_object(), "config root must be an object");
    json cfg = default_config();
    cfg.merge_patch(user);

    RunConfig rc;
    rc.source = cfg;
    try {
        const CaseLabel label = case_from_string(cfg.at("case").get<std::string>());
        rc.modes_per_side = cfg.at("modes_per_side").get<int>();
        rc.fsr = cfg.at("fsr").get<double>();
        require(rc.fsr > 0.0, "fsr must be positive");
        rc.scenario = build_case(label, rc.modes_per_side, rc.fsr);

        const json& g = cfg.at("grid");
        const double dt = (!g.contains("dt") || g.at("dt").is_null()) ? rc.scenario.grid.dt : number(g, "dt", "grid");
        const double t_i = number(g, "t_i", "grid");
        const double t_max = number(g, "t_max", "grid");
        require(dt > 0.0 && dt <= 0.1, "grid.dt must lie in (0, 0.1]");
        require(t_max > t_i, "grid.t_max must exceed grid.t_i");
        require((t_max - t_i) / dt <= 5e7, "grid has too many steps");
        rc.scenario.grid = TimeGrid::span(t_i, t_max, dt);
        rc.scenario.grid.steps_in(rc.scenario.channel.t0);

        const json& p = cfg.at("pulse");
        SenderPulse pulse;
        pulse.shape = shape_from_string(p.at("shape").get<std::string>());
        pulse.g = to_angular(number(p, "g", "pulse"));
        pulse.center = number(p, "center", "pulse");
        pulse.scale = number(p, "scale", "pulse");
        require(pulse.scale != 0.0, "pulse.scale must be nonzero");
        rc.scenario.pulse = pulse;

        const json& s = cfg.at("synthesis");
        rc.synthesis.alpha_cutoff = number(s, "alpha_cutoff", "synthesis");
        rc.synthesis.clamp_eps = number(s, "clamp_eps", "synthesis");
        rc.synthesis.g_max = to_angular(number(s, "g_max", "synthesis"));
        rc.synthesis.substeps = s.at("substeps").get<int>();
        rc.synthesis.deficit_tol = number(s, "deficit_tol", "synthesis");
        require(rc.synthesis.alpha_cutoff > 0.0 && rc.synthesis.alpha_cutoff <= 1e-2,
                "synthesis.alpha_cutoff must lie in (0, 1e-2]");
        require(rc.synthesis.clamp_eps > 0.0 && rc.synthesis.clamp_eps <= 1e-3,
                "synthesis.clamp_eps must lie in (0, 1e-3]");
        require(rc.synthesis.g_max > 0.0, "synthesis.g_max must be positive");
        require(rc.synthesis.substeps >= 1 && rc.synthesis.substeps <= 64, "synthesis.substeps must lie in [1, 64]");
        require(rc.synthesis.deficit_tol >= 0.0, "synthesis.deficit_tol must be non-negative");

        const json& v = cfg.at("validator");
        rc.validator.onset_window = number(v, "onset_window", "validator");
        rc.validator.onset_substeps = v.at("onset_substeps").get<int>();
        rc.validator.norm_tol = number(v, "norm_tol", "validator");
        rc.validator.extra_time = number(v, "extra_time", "validator");
        require(rc.validator.onset_window >= 0.0, "validator.onset_window must be non-negative");
        require(rc.validator.onset_substeps >= 1, "validator.onset_substeps must be at least 1");
        require(rc.validator.extra_time >= 0.0, "validator.extra_time must be non-negative");

        const json& n = cfg.at("noise");
        rc.noise.kappa = to_angular(number(n, "kappa", "noise"));
        rc.noise.gamma = to_angular(number(n, "gamma", "noise"));
        rc.noise.er = number(n, "er", "noise");
        rc.noise.anharm = to_angular(number(n, "anharmonicity", "noise"));
        rc.noise.n_th = number(n, "n_th", "noise");
        require(rc.noise.kappa >= 0.0 && rc.noise.gamma >= 0.0, "noise rates must be non-negative");
        require(rc.noise.er >= 0.0 && rc.noise.er <= 1.0, "noise.er must lie in [0, 1]");
        require(rc.noise.n_th >= 0.0, "noise.n_th must be non-negative");

        const json& pl = cfg.at("poles");
        rc.poles.g = number_list(pl.at("g"), "poles.g");
        rc.poles.single_qubit = pl.at("single_qubit").get<bool>();
        if (pl.contains("box") && !pl.at("box").is_null()) {
            const json& b = pl.at("box");
            Box box{number(b, "re_min", "poles.box"), number(b, "re_max", "poles.box"),
                    number(b, "im_min", "poles.box"), number(b, "im_max", "poles.box")};
            require(box.re_max > box.re_min && box.im_max > box.im_min, "poles.box must have positive extent");
            rc.poles.box = box;
        }

        const json& sw = cfg.at("sweep");
        rc.sweep.parameter = sw.at("parameter").get<std::string>();
        rc.sweep.values = number_list(sw.at("values"), "sweep.values");
        require(rc.sweep.parameter == "g" || rc.sweep.parameter == "er" || rc.sweep.parameter == "kappa" ||
                    rc.sweep.parameter == "gamma",
                "sweep.parameter must be one of g, er, kappa, gamma");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    return rc;
}

RunConfig with_parameter(const RunConfig& cfg, const std::string& name, double value) {
    json j = cfg.source;
    if (name == "g") j["pulse"]["g"] = value;
    else if (name == "er") j["noise"]["er"] = value;
    else if (name == "kappa") j["noise"]["kappa"] = value;
    else if (name == "gamma") j["noise"]["gamma"] = value;
    else throw ConfigError("unknown sweep parameter '" + name + "'");
    return parse_config(j);
}

}  // namespace adsc::app
