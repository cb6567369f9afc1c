#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "adsc/diagnostics.hpp"
#include "adsc/poles.hpp"
#include "io.hpp"

namespace adsc::app {

namespace {

std::string path_in(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

std::ostream& log_of(const Context& ctx) { return ctx.log ? *ctx.log : std::cerr; }

double max_imag_ratio(const SampledSignal& s) {
    double peak = 0.0, imag = 0.0;
    for (cplx v : s.values) {
        peak = std::max(peak, std::abs(v));
        imag = std::max(imag, std::abs(v.imag()));
    }
    return peak > 0.0 ? imag / peak : 0.0;
}

json synth_summary(const RunConfig& cfg, const Synthesis& syn) {
    const PulsePair& p = syn.pulses;
    const SynthesisTrace& t = syn.trace;
    const auto residual = terminal_residual(p.gA, t.alpha, p.gB_regular, t.beta_tilde, cfg.scenario.channel);
    double peak_gb = 0.0;
    for (std::size_t n = 1; n < p.gB_tilde.size(); ++n) peak_gb = std::max(peak_gb, std::abs(p.gB_tilde[n]));
    return {{"t_i", p.grid().t_i},
            {"t_f", p.t_f},
            {"dt", p.grid().dt},
            {"alpha_mag2_at_t_f", std::norm(t.alpha.values.back())},
            {"beta_mag2_at_t_f", t.beta_mag2.back()},
            {"capped_interval", p.capped_interval},
            {"onset_rate", p.onset_rate},
            {"gB_regular_onset", from_angular(std::abs(p.gB_regular[0]))},
            {"peak_gB_tilde_after_onset", from_angular(peak_gb)},
            {"max_imag_ratio_gB", max_imag_ratio(p.gB_tilde)},
            {"floor_deficit", t.floor_deficit},
            {"terminal_residual_max", *std::max_element(residual.begin(), residual.end())}};
}

struct RowResult {
    bool ok = false;
    std::string status;
    TransferReport report;
    Discrepancy discrepancy;
    double inefficiency = std::nan("");
};

RowResult run_row(const RunConfig& cfg, const std::string& parameter) {
    RowResult row;
    const ChannelSpec& spec = cfg.scenario.channel;
    const Synthesis syn = synthesize(cfg.scenario, cfg.synthesis);
    const LossRates rates{cfg.noise.kappa, cfg.noise.gamma};
    const Trajectory traj = evolve_with_loss(spec, syn.pulses, rates, cfg.validator);
    row.report = make_report(traj, syn.pulses, spec, rates);
    if (rates.kappa == 0.0 && rates.gamma == 0.0) row.discrepancy = compare(traj, syn.trace, spec.t0);
    row.inefficiency = loss_inefficiency(traj, rates).inefficiency;
    if (parameter == "er") {
        row.inefficiency =
            evolve_leakage(spec, syn.pulses, cfg.noise.er, cfg.noise.anharm, cfg.validator).inefficiency;
    }
    row.ok = true;
    row.status = "ok";
    return row;
}

}  // namespace

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return kConfig;
    if (dynamic_cast<const SynthesisRefused*>(&e)) return kRefused;
    if (dynamic_cast<const NumericalFailure*>(&e) || dynamic_cast<const InconsistentScenario*>(&e) ||
        dynamic_cast<const UnresolvedRegion*>(&e))
        return kNumerical;
    if (dynamic_cast<const nlohmann::json::exception*>(&e)) return kConfig;
    return kNumerical;
}

int cmd_synth(const Context& ctx) {
    const RunConfig& cfg = ctx.config;
    const Synthesis syn = synthesize(cfg.scenario, cfg.synthesis);
    std::ostringstream pulses, trace;
    write_pulses_csv(pulses, syn.pulses);
    write_trace_csv(trace, syn.trace);
    write_file(path_in(ctx.out_dir, "pulses.csv"), pulses.str());
    write_file(path_in(ctx.out_dir, "trace.csv"), trace.str());
    json report = {{"command", "synth"}, {"config", cfg.source}, {"synthesis", synth_summary(cfg, syn)}};
    write_file(path_in(ctx.out_dir, "synth_report.json"), report.dump(2) + "\n");
    log_of(ctx) << "synth: t_f = " << num(syn.pulses.t_f) << ", 1 - |beta~(t_f)|^2 = "
                << num(1.0 - syn.trace.beta_mag2.back()) << "\n";
    return kOk;
}

int cmd_validate(const Context& ctx) {
    const RunConfig& cfg = ctx.config;
    const ChannelSpec& spec = cfg.scenario.channel;
    const std::string pulses_path = ctx.pulses_path.empty() ? path_in(ctx.out_dir, "pulses.csv") : ctx.pulses_path;
    std::ifstream pin(pulses_path);
    if (!pin) throw ConfigError("pulses file '" + pulses_path + "' not found (run synth first or pass --pulses)");
    const PulsePair pulses = read_pulses_csv(pin);
    pulses.grid().steps_in(spec.t0);

    const LossRates rates{cfg.noise.kappa, cfg.noise.gamma};
    const Trajectory traj = evolve_with_loss(spec, pulses, rates, cfg.validator);
    const TransferReport report = make_report(traj, pulses, spec, rates);
    const LossOutcome loss = loss_inefficiency(traj, rates);

    json out = {{"command", "validate"}, {"config", cfg.source}, {"pulses", ctx.pulses_path.empty() ? std::string("pulses.csv") : ctx.pulses_path}};
    out["report"] = to_json(report);
    out["inefficiency"] = loss.inefficiency;
    out["t_stop"] = loss.t_stop;
    double drift = 0.0;
    for (double v : traj.norm) drift = std::max(drift, std::abs(v - 1.0));
    out["norm_deviation_max"] = drift;

    const std::filesystem::path trace_path = std::filesystem::path(pulses_path).parent_path() / "trace.csv";
    std::ifstream tin(trace_path);
    if (tin) {
        const SynthesisTrace trace = read_trace_csv(tin);
        out["discrepancy"] = to_json(compare(traj, trace, spec.t0));
    } else {
        out["discrepancy"] = nullptr;
    }
    std::ostringstream tcsv;
    write_trajectory_csv(tcsv, traj, spec);
    write_file(path_in(ctx.out_dir, "trajectory.csv"), tcsv.str());
    write_file(path_in(ctx.out_dir, "report.json"), out.dump(2) + "\n");
    log_of(ctx) << "validate: E/t0 = " << num(report.E_over_t0) << ", inefficiency = " << num(loss.inefficiency)
                << "\n";
    return kOk;
}

int cmd_sweep(const Context& ctx) {
    const RunConfig& cfg = ctx.config;
    const auto& values = cfg.sweep.values;
    if (values.empty()) throw ConfigError("sweep.values is empty");
    std::vector<RowResult> rows(values.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < values.size(); i = next++) {
            try {
                rows[i] = run_row(with_parameter(cfg, cfg.sweep.parameter, values[i]), cfg.sweep.parameter);
            } catch (const std::exception& e) {
                rows[i].ok = false;
                rows[i].status = std::string("error: ") + e.what();
            }
        }
    };
    const int jobs = std::max(1, std::min<int>(ctx.jobs, static_cast<int>(values.size())));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::ostringstream csv;
    csv << "# schema: adsc.sweep v1\n";
    csv << "# parameter: " << cfg.sweep.parameter << " (fsr units for rates and couplings)\n";
    csv << "value,status,t_f,T,E_integrated,E_over_t0,E_buffer_form,buffer,peak_channel_population,"
           "final_infidelity,loss_estimate,discrepancy_alpha,discrepancy_beta,inefficiency\n";
    std::size_t ok = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const RowResult& r = rows[i];
        std::string status = r.status;
        std::replace(status.begin(), status.end(), ',', ';');
        std::replace(status.begin(), status.end(), '\n', ' ');
        csv << num(values[i]) << ',' << status;
        if (r.ok) {
            ++ok;
            const TransferReport& t = r.report;
            csv << ',' << num(t.t_f) << ',' << num(t.T) << ',' << num(t.E_integrated) << ',' << num(t.E_over_t0) << ','
                << num(t.E_buffer_form) << ',' << num(t.buffer) << ',' << num(t.peak_channel_population) << ','
                << num(t.final_infidelity) << ',' << num(t.loss_estimate) << ',' << num(r.discrepancy.alpha) << ','
                << num(r.discrepancy.beta) << ',' << num(r.inefficiency);
        } else {
            csv << ",,,,,,,,,,,,";
        }
        csv << '\n';
    }
    write_file(path_in(ctx.out_dir, "sweep.csv"), csv.str());
    log_of(ctx) << "sweep: " << ok << " of " << rows.size() << " rows succeeded\n";
    return ok > 0 ? kOk : kNumerical;
}

int cmd_poles(const Context& ctx) {
    const RunConfig& cfg = ctx.config;
    const ChannelSpec& spec = cfg.scenario.channel;
    std::vector<double> gs = cfg.poles.g;
    if (gs.empty()) gs.push_back(from_angular(cfg.scenario.pulse.g));

    std::vector<PoleRow> rows;
    std::ostringstream slow;
    if (cfg.poles.single_qubit) {
        for (double g : gs)
            for (double z : single_qubit_poles(spec, to_angular(g)))
                rows.push_back({g, cplx{0.0, from_angular(z)}, 0.0});
        std::ostringstream csv;
        write_poles_csv(csv, rows);
        write_file(path_in(ctx.out_dir, "single_qubit_poles.csv"), csv.str());
        log_of(ctx) << "poles: " << rows.size() << " imaginary-axis roots\n";
        return kOk;
    }

    slow << "# schema: adsc.slowest v1\n# g and slowest_decay in fsr units\ng,slowest_decay,count\n";
    Box box = default_search_box(spec);
    if (cfg.poles.box) {
        const Box& b = *cfg.poles.box;
        box = Box{to_angular(b.re_min), to_angular(b.re_max), to_angular(b.im_min), to_angular(b.im_max)};
    }
    for (double g : gs) {
        const PoleSet set = find_poles(spec, to_angular(g), box);
        if (set.poles.empty()) log_of(ctx) << "warning: no roots inside the search box for g = " << num(g) << "\n";
        for (std::size_t i = 0; i < set.poles.size(); ++i)
            rows.push_back({g, set.poles[i] / kTwoPi, set.residual[i]});
        slow << num(g) << ',' << (set.poles.empty() ? std::string() : num(from_angular(set.slowest_decay))) << ','
             << set.poles.size() << '\n';
    }
    std::ostringstream csv;
    write_poles_csv(csv, rows);
    write_file(path_in(ctx.out_dir, "poles.csv"), csv.str());
    write_file(path_in(ctx.out_dir, "slowest.csv"), slow.str());
    log_of(ctx) << "poles: " << rows.size() << " roots over " << gs.size() << " coupling values\n";
    return kOk;
}

int cmd_noise(const Context& ctx, const std::string& kind) {
    const RunConfig& cfg = ctx.config;
    const ChannelSpec& spec = cfg.scenario.channel;
    const Synthesis syn = synthesize(cfg.scenario, cfg.synthesis);
    json out = {{"command", "noise " + kind}, {"config", cfg.source}};
    if (kind == "leakage") {
        const LeakageReport r = evolve_leakage(spec, syn.pulses, cfg.noise.er, cfg.noise.anharm, cfg.validator);
        json pops = json::object();
        for (std::size_t i = 0; i < r.basis.size(); ++i) pops[r.basis[i]] = r.final_populations[i];
        out["leakage"] = {{"er", cfg.noise.er},
                          {"inefficiency", r.inefficiency},
                          {"baseline", r.baseline},
                          {"pop_2B_over_er", r.pop_2B_over_er},
                          {"pop_doubly_excited_over_er", r.pop_doubly_over_er},
                          {"residual_channel", r.residual_channel},
                          {"norm_drift", r.norm_drift},
                          {"two_excitation_populations", pops}};
    } else if (kind == "loss") {
        const LossRates rates{cfg.noise.kappa, cfg.noise.gamma};
        const Trajectory traj = evolve_with_loss(spec, syn.pulses, rates, cfg.validator);
        const TransferReport report = make_report(traj, syn.pulses, spec, rates);
        const LossOutcome loss = loss_inefficiency(traj, rates);
        out["loss"] = {{"report", to_json(report)}, {"inefficiency", loss.inefficiency}, {"t_stop", loss.t_stop}};
        std::ostringstream tcsv;
        write_trajectory_csv(tcsv, traj, spec);
        write_file(path_in(ctx.out_dir, "trajectory.csv"), tcsv.str());
    } else if (kind == "thermal") {
        const HeisenbergReport h = evolve_linear_heisenberg(spec, syn.pulses, cfg.validator);
        double weight = 0.0;
        for (double w : h.thermal_weight) weight += w;
        out["thermal"] = {{"unitarity_error", h.unitarity_error},
                          {"row_norm_error", h.row_norm_error},
                          {"transfer_magnitude", std::abs(h.transfer)},
                          {"single_excitation_beta", h.single_excitation_beta},
                          {"transfer_mismatch", std::abs(std::abs(h.transfer) - h.single_excitation_beta)},
                          {"channel_weight_in_receiver", weight},
                          {"n_th", cfg.noise.n_th},
                          {"thermal_photons_in_receiver", weight * cfg.noise.n_th}};
    } else {
        throw ConfigError("unknown noise kind '" + kind + "' (expected leakage, loss or thermal)");
    }
    write_file(path_in(ctx.out_dir, "noise_report.json"), out.dump(2) + "\n");
    log_of(ctx) << "noise " << kind << ": report written\n";
    return kOk;
}

}  // namespace adsc::app
