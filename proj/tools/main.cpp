#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "app/commands.hpp"

namespace {

struct Flags {
    std::string config;
    std::string out;
    std::string pulses;
    std::vector<std::string> overrides;
    int jobs = 1;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "JSON run configuration");
    cmd->add_option("--out", f.out, "output directory (default: $ADSC_OUT_ROOT/<command>)");
    cmd->add_option("--override", f.overrides, "KEY=VALUE override, dotted keys (repeatable)");
    cmd->add_option("--jobs", f.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
}

adsc::app::Context make_context(const Flags& f, const std::string& name) {
    using namespace adsc::app;
    json cfg = f.config.empty() ? json::object() : load_config_file(f.config);
    for (const auto& o : f.overrides) apply_override(cfg, o);
    Context ctx;
    ctx.config = parse_config(cfg);
    ctx.jobs = f.jobs;
    ctx.pulses_path = f.pulses;
    if (!f.out.empty()) {
        ctx.out_dir = f.out;
    } else {
        const char* root = std::getenv("ADSC_OUT_ROOT");
        ctx.out_dir = (std::filesystem::path(root && *root ? root : "adsc-out") / name).string();
    }
    return ctx;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adsc: pulse synthesis and verification for delayed dark-state transfer"};
    app.require_subcommand(1);
    Flags flags;

    auto* synth = app.add_subcommand("synth", "solve the sender equation and synthesize the receiver pulse");
    auto* validate = app.add_subcommand("validate", "integrate the full dynamics with synthesized pulses");
    auto* sweep = app.add_subcommand("sweep", "run a parameter grid (g, er, kappa or gamma)");
    auto* poles = app.add_subcommand("poles", "locate Laplace poles for constant coupling");
    auto* noise = app.add_subcommand("noise", "noise studies");
    noise->require_subcommand(1);
    auto* leakage = noise->add_subcommand("leakage", "three-level transmons with initial leakage");
    auto* loss = noise->add_subcommand("loss", "qubit and channel loss");
    auto* thermal = noise->add_subcommand("thermal", "linear Heisenberg-picture immunity check");
    for (auto* c : {synth, validate, sweep, poles, leakage, loss, thermal}) add_common(c, flags);
    validate->add_option("--pulses", flags.pulses, "pulses.csv to validate (default: <out>/pulses.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : adsc::app::kConfig;
    }

    return adsc::app::guarded(std::cerr, [&]() -> int {
        using namespace adsc::app;
        if (synth->parsed()) return cmd_synth(make_context(flags, "synth"));
        if (validate->parsed()) return cmd_validate(make_context(flags, "validate"));
        if (sweep->parsed()) return cmd_sweep(make_context(flags, "sweep"));
        if (poles->parsed()) return cmd_poles(make_context(flags, "poles"));
        for (auto* c : {leakage, loss, thermal})
            if (c->parsed()) return cmd_noise(make_context(flags, "noise-" + c->get_name()), c->get_name());
        return kConfig;
    });
}
