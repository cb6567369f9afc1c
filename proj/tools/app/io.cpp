#include "io.hpp"

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace adsc::app {

namespace {

std::vector<std::vector<double>> read_rows(std::istream& in, const std::string& schema, std::size_t columns,
                                           std::vector<std::string>& comments) {
    std::string line;
    bool schema_seen = false, header_seen = false;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("schema: " + schema) != std::string::npos) schema_seen = true;
            comments.push_back(line);
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ConfigError("non-numeric cell '" + cell + "' in " + schema + " csv");
            }
        }
        if (row.size() < columns) throw ConfigError("short row in " + schema + " csv");
        rows.push_back(std::move(row));
    }
    if (!schema_seen) throw ConfigError("missing '# schema: " + schema + "' line");
    if (rows.size() < 2) throw ConfigError(schema + " csv needs at least two rows");
    return rows;
}

double comment_value(const std::vector<std::string>& comments, const std::string& key, double fallback) {
    for (const auto& c : comments) {
        const auto pos = c.find(key + ":");
        if (pos != std::string::npos) return std::stod(c.substr(pos + key.size() + 1));
    }
    return fallback;
}

TimeGrid grid_from(const std::vector<std::vector<double>>& rows) {
    const double t_i = rows.front()[0];
    const double dt = rows[1][0] - rows[0][0];
    TimeGrid g{t_i, dt, rows.size() - 1};
    const double tol = 1e-9 * std::max(1.0, std::abs(g.t_end()));
    if (!(dt > 0.0) || std::abs(rows.back()[0] - g.t_end()) > tol) throw ConfigError("csv time column is not uniform");
    return g;
}

}  // namespace

std::string num(double v) { return fmt::format("{}", v); }

void write_pulses_csv(std::ostream& out, const PulsePair& p) {
    out << "# schema: adsc.pulses v1\n";
    out << "# t_f: " << num(p.t_f) << "\n";
    out << "# clamp_eps: " << num(p.clamp_eps) << "\n";
    out << "# g_max: " << num(from_angular(p.g_max)) << "\n";
    out << "# onset_rate: " << num(p.onset_rate) << "\n";
    out << "# capped_interval: " << num(p.capped_interval) << "\n";
    out << "# couplings in fsr units; gB_regular = gB_tilde * sqrt(t - t_i), uncapped\n";
    out << "t,re_gA,im_gA,re_gB_tilde,im_gB_tilde,re_gB_regular,im_gB_regular\n";
    const TimeGrid& g = p.grid();
    for (std::size_t n = 0; n <= g.n_steps; ++n) {
        const cplx a = p.gA[n] / kTwoPi, b = p.gB_tilde[n] / kTwoPi, r = p.gB_regular[n] / kTwoPi;
        out << num(g.at(n)) << ',' << num(a.real()) << ',' << num(a.imag()) << ',' << num(b.real()) << ','
            << num(b.imag()) << ',' << num(r.real()) << ',' << num(r.imag()) << '\n';
    }
}

PulsePair read_pulses_csv(std::istream& in) {
    std::vector<std::string> comments;
    const auto rows = read_rows(in, "adsc.pulses", 7, comments);
    PulsePair p;
    const TimeGrid g = grid_from(rows);
    p.gA = SampledSignal(g);
    p.gB_tilde = SampledSignal(g);
    p.gB_regular = SampledSignal(g);
    for (std::size_t n = 0; n < rows.size(); ++n) {
        const auto& r = rows[n];
        p.gA.values[n] = kTwoPi * cplx{r[1], r[2]};
        p.gB_tilde.values[n] = kTwoPi * cplx{r[3], r[4]};
        p.gB_regular.values[n] = kTwoPi * cplx{r[5], r[6]};
    }
    p.t_f = g.t_end();
    p.clamp_eps = comment_value(comments, "clamp_eps", 0.0);
    p.g_max = to_angular(comment_value(comments, "g_max", 0.0));
    p.onset_rate = comment_value(comments, "onset_rate", 0.0);
    p.capped_interval = comment_value(comments, "capped_interval", 0.0);
    return p;
}

void write_trace_csv(std::ostream& out, const SynthesisTrace& tr) {
    out << "# schema: adsc.trace v1\n";
    out << "# x and y in fsr units; beta_phase in radians\n";
    out << "t,re_alpha,im_alpha,re_x,im_x,re_y,im_y,beta_mag2,beta_phase\n";
    const TimeGrid& g = tr.alpha.grid;
    for (std::size_t n = 0; n <= g.n_steps; ++n) {
        const cplx a = tr.alpha[n], x = tr.x[n] / kTwoPi, y = tr.y[n];
        out << num(g.at(n)) << ',' << num(a.real()) << ',' << num(a.imag()) << ',' << num(x.real()) << ','
            << num(x.imag()) << ',' << num(y.real()) << ',' << num(y.imag()) << ',' << num(tr.beta_mag2[n]) << ','
            << num(tr.beta_phase[n]) << '\n';
    }
}

SynthesisTrace read_trace_csv(std::istream& in) {
    std::vector<std::string> comments;
    const auto rows = read_rows(in, "adsc.trace", 9, comments);
    SynthesisTrace tr;
    const TimeGrid g = grid_from(rows);
    tr.alpha = SampledSignal(g);
    for (std::size_t n = 0; n < rows.size(); ++n) {
        tr.alpha.values[n] = cplx{rows[n][1], rows[n][2]};
        tr.beta_mag2.push_back(rows[n][7]);
        tr.beta_phase.push_back(rows[n][8]);
    }
    return tr;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr, const ChannelSpec& spec) {
    out << "# schema: adsc.trajectory v1\n";
    out << "t,re_alpha,im_alpha,re_beta,im_beta";
    for (std::size_t k = 0; k < spec.modes(); ++k) {
        const std::string label = num(spec.delta[k] / spec.fsr);
        out << ",re_c[" << label << "],im_c[" << label << "]";
    }
    out << ",channel_population,norm\n";
    for (std::size_t n = 0; n <= tr.grid.n_steps; ++n) {
        out << num(tr.grid.at(n)) << ',' << num(tr.alpha[n].real()) << ',' << num(tr.alpha[n].imag()) << ','
            << num(tr.beta[n].real()) << ',' << num(tr.beta[n].imag());
        for (const auto& c : tr.c_modes) out << ',' << num(c[n].real()) << ',' << num(c[n].imag());
        out << ',' << num(tr.channel_population(n)) << ',' << num(tr.norm[n]) << '\n';
    }
}

void write_poles_csv(std::ostream& out, const std::vector<PoleRow>& rows) {
    out << "# schema: adsc.poles v1\n";
    out << "# g and s in fsr units\n";
    out << "g,re_s,im_s,residual\n";
    for (const auto& r : rows)
        out << num(r.g) << ',' << num(r.s.real()) << ',' << num(r.s.imag()) << ',' << num(r.residual) << '\n';
}

nlohmann::json to_json(const TransferReport& r) {
    return {{"t_i", r.t_i},
            {"t_f", r.t_f},
            {"t0", r.t0},
            {"T", r.T},
            {"E_integrated", r.E_integrated},
            {"E_over_t0", r.E_over_t0},
            {"E_buffer_form", r.E_buffer_form},
            {"buffer", r.buffer},
            {"peak_channel_population", r.peak_channel_population},
            {"final_infidelity", r.final_infidelity},
            {"kappa", from_angular(r.kappa)},
            {"gamma", from_angular(r.gamma)},
            {"loss_estimate", r.loss_estimate}};
}

nlohmann::json to_json(const Discrepancy& d) {
    return {{"alpha", d.alpha}, {"beta", d.beta}, {"max", d.max()}};
}

void write_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << text;
}

}  // namespace adsc::app
