#include "adsc/validator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace adsc {

namespace {

constexpr int kQubitA = 0;
constexpr int kQubitB = 1;

// H[upper][lower] = factor * G_q(t) * exp(-i delta_mode t), with G_A = g_A and
// G_B = parity_mode * g_B. `upper` holds the qubit excitation, `lower` the photon.
struct Coupling {
    int upper;
    int lower;
    int qubit;
    int mode;
    double factor;
};

struct SectorModel {
    std::size_t dim = 0;
    std::vector<double> energy;
    std::vector<double> qubit_exc;
    std::vector<double> photon_exc;
    std::vector<Coupling> couplings;
    std::vector<std::string> labels;
};

std::string mode_label(const ChannelSpec& spec, std::size_t k) {
    const double d = from_angular(spec.delta[k]) / from_angular(spec.fsr);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%+g", d);
    return std::string("c") + buf;
}

SectorModel single_sector(const ChannelSpec& spec) {
    const std::size_t m = spec.modes();
    SectorModel s;
    s.dim = m + 2;
    s.energy.assign(s.dim, 0.0);
    s.qubit_exc.assign(s.dim, 0.0);
    s.photon_exc.assign(s.dim, 0.0);
    s.qubit_exc[0] = s.qubit_exc[1] = 1.0;
    s.labels = {"1_A", "1_B"};
    for (std::size_t k = 0; k < m; ++k) {
        s.photon_exc[2 + k] = 1.0;
        s.labels.push_back("1_" + mode_label(spec, k));
        s.couplings.push_back({0, static_cast<int>(2 + k), kQubitA, static_cast<int>(k), 1.0});
        s.couplings.push_back({1, static_cast<int>(2 + k), kQubitB, static_cast<int>(k), 1.0});
    }
    return s;
}

struct TwoIndex {
    std::size_t m;
    int two_a() const { return 0; }
    int two_b() const { return 1; }
    int ab() const { return 2; }
    int a_k(std::size_t k) const { return static_cast<int>(3 + k); }
    int b_k(std::size_t k) const { return static_cast<int>(3 + m + k); }
    int pair(std::size_t j, std::size_t k) const {  // j < k
        const std::size_t before = j * m - j * (j + 1) / 2;
        return static_cast<int>(3 + 2 * m + before + (k - j - 1));
    }
    int two_k(std::size_t k) const { return static_cast<int>(3 + 2 * m + m * (m - 1) / 2 + k); }
    std::size_t dim() const { return 3 + 2 * m + m * (m - 1) / 2 + m; }
};

SectorModel two_sector(const ChannelSpec& spec, double anharm) {
    const std::size_t m = spec.modes();
    const TwoIndex ix{m};
    const double r2 = std::sqrt(2.0);
    SectorModel s;
    s.dim = ix.dim();
    s.energy.assign(s.dim, 0.0);
    s.qubit_exc.assign(s.dim, 0.0);
    s.photon_exc.assign(s.dim, 0.0);
    s.labels.assign(s.dim, "");
    s.energy[0] = s.energy[1] = -anharm;
    s.labels[0] = "2_A";
    s.labels[1] = "2_B";
    s.labels[2] = "1_A 1_B";
    for (std::size_t k = 0; k < m; ++k) {
        const int kk = static_cast<int>(k);
        s.labels[ix.a_k(k)] = "1_A 1_" + mode_label(spec, k);
        s.labels[ix.b_k(k)] = "1_B 1_" + mode_label(spec, k);
        s.labels[ix.two_k(k)] = "2_" + mode_label(spec, k);
        s.couplings.push_back({ix.two_a(), ix.a_k(k), kQubitA, kk, r2});
        s.couplings.push_back({ix.two_b(), ix.b_k(k), kQubitB, kk, r2});
        s.couplings.push_back({ix.ab(), ix.b_k(k), kQubitA, kk, 1.0});
        s.couplings.push_back({ix.ab(), ix.a_k(k), kQubitB, kk, 1.0});
        for (std::size_t j = 0; j < m; ++j) {
            const int jj = static_cast<int>(j);
            if (j == k) {
                s.couplings.push_back({ix.a_k(k), ix.two_k(k), kQubitA, jj, r2});
                s.couplings.push_back({ix.b_k(k), ix.two_k(k), kQubitB, jj, r2});
            } else {
                const int target = j < k ? ix.pair(j, k) : ix.pair(k, j);
                s.couplings.push_back({ix.a_k(k), target, kQubitA, jj, 1.0});
                s.couplings.push_back({ix.b_k(k), target, kQubitB, jj, 1.0});
            }
        }
        for (std::size_t j = k + 1; j < m; ++j)
            s.labels[ix.pair(k, j)] = "1_" + mode_label(spec, k) + " 1_" + mode_label(spec, j);
    }
    for (std::size_t i = 0; i < s.dim; ++i) {
        const std::string& l = s.labels[i];
        const bool qa = l.find("_A") != std::string::npos, qb = l.find("_B") != std::string::npos;
        s.qubit_exc[i] = (qa ? 1.0 : 0.0) + (qb ? 1.0 : 0.0);
        s.photon_exc[i] = 2.0 - s.qubit_exc[i];
    }
    return s;
}

// Four-point Lagrange interpolation inside the sampled range, one-sided at
// the ends, zero outside.
cplx cubic_at(const SampledSignal& sig, double t) {
    const TimeGrid& g = sig.grid;
    const double u = (t - g.t_i) / g.dt;
    const double last = static_cast<double>(g.n_steps);
    if (u < -1e-9 || u > last + 1e-9) return 0.0;
    if (g.n_steps < 3) return sig.at(t);
    const double fl = std::floor(u);
    if (u - fl == 0.0) return sig.values[static_cast<std::size_t>(fl)];
    auto base = static_cast<long>(fl) - 1;
    base = std::clamp(base, 0L, static_cast<long>(g.n_steps) - 3);
    const double x = u - static_cast<double>(base);
    const cplx* p = sig.values.data() + base;
    const double l0 = -(x - 1) * (x - 2) * (x - 3) / 6.0;
    const double l1 = x * (x - 2) * (x - 3) / 2.0;
    const double l2 = -x * (x - 1) * (x - 3) / 2.0;
    const double l3 = x * (x - 1) * (x - 2) / 6.0;
    return l0 * p[0] + l1 * p[1] + l2 * p[2] + l3 * p[3];
}

struct Drive {
    cplx ga;
    cplx gb;
    double scale;
};

// A model applied to `blocks` consecutive vectors of its dimension.
struct Block {
    const SectorModel* model;
    std::size_t offset;
    std::size_t count;
};

class System {
public:
    System(const ChannelSpec& spec, std::vector<Block> blocks, LossRates rates)
        : spec_(spec), blocks_(std::move(blocks)), rates_(rates), g_(2 * spec.modes()) {
        for (const Block& b : blocks_) dim_ = std::max(dim_, b.offset + b.count * b.model->dim);
    }

    std::size_t dim() const { return dim_; }

    void rhs(double t, const Drive& d, const cplx* y, cplx* dy) const {
        const std::size_t m = spec_.modes();
        for (std::size_t k = 0; k < m; ++k) {
            const cplx e = std::exp(-kI * spec_.delta[k] * t);
            g_[k] = d.ga * e;
            g_[m + k] = static_cast<double>(spec_.parity[k]) * d.gb * e;
        }
        std::fill(dy, dy + dim_, cplx{});
        for (const Block& b : blocks_) {
            const SectorModel& s = *b.model;
            for (std::size_t c = 0; c < b.count; ++c) {
                const cplx* yy = y + b.offset + c * s.dim;
                cplx* dd = dy + b.offset + c * s.dim;
                for (const Coupling& cp : s.couplings) {
                    const cplx h = cp.factor * g_[static_cast<std::size_t>(cp.qubit) * m + cp.mode];
                    dd[cp.upper] += -kI * h * yy[cp.lower];
                    dd[cp.lower] += -kI * std::conj(h) * yy[cp.upper];
                }
                for (std::size_t i = 0; i < s.dim; ++i) {
                    const double decay = 0.5 * (rates_.gamma * s.qubit_exc[i] + rates_.kappa * s.photon_exc[i]);
                    if (s.energy[i] != 0.0 || decay != 0.0)
                        dd[i] += (-kI * s.energy[i] - decay) * d.scale * yy[i];
                }
            }
        }
    }

private:
    const ChannelSpec& spec_;
    std::vector<Block> blocks_;
    LossRates rates_;
    std::size_t dim_ = 0;
    mutable std::vector<cplx> g_;
};

struct Stepper {
    std::vector<cplx> k1, k2, k3, k4, tmp;
    explicit Stepper(std::size_t n) : k1(n), k2(n), k3(n), k4(n), tmp(n) {}

    template <class Eval>
    void step(std::vector<cplx>& y, double x, double h, Eval&& eval) {
        const std::size_t n = y.size();
        eval(x, y.data(), k1.data());
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        eval(x + 0.5 * h, tmp.data(), k2.data());
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        eval(x + 0.5 * h, tmp.data(), k3.data());
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
        eval(x + h, tmp.data(), k4.data());
        for (std::size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
};

TimeGrid run_grid(const ChannelSpec& spec, const PulsePair& pulses, const ValidatorOptions& opts,
                  std::size_t& window) {
    const TimeGrid& pg = pulses.grid();
    window = pg.steps_in(spec.t0);
    const auto extra = static_cast<std::size_t>(std::llround(std::max(0.0, opts.extra_time) / pg.dt));
    return TimeGrid{pg.t_i, pg.dt, pg.n_steps + window + extra};
}

// Integrates `sys` across the run grid. The receiver onset at t_i + t0 is
// integrated in sigma = sqrt(t - t_i - t0), where g_B * dt/dsigma is regular.
template <class Record>
void drive_system(const System& sys, const ChannelSpec& spec, const PulsePair& pulses,
                  const ValidatorOptions& opts, const TimeGrid& grid, std::size_t window,
                  std::vector<cplx>& y, Record&& record) {
    const double t_b = pulses.grid().t_i + spec.t0;
    const cplx shift = std::exp(-kI * spec.omega0_phase);
    const auto onset_steps = static_cast<std::size_t>(std::llround(std::max(0.0, opts.onset_window) / grid.dt));
    const int sub = std::max(1, opts.onset_substeps);
    const std::size_t sender_steps = pulses.grid().n_steps;
    bool sender_on = true;
    Stepper st(y.size());

    auto sender = [&](double t) { return sender_on ? cubic_at(pulses.gA, t) : cplx{}; };
    auto eval_t = [&](double t, const cplx* in, cplx* out) {
        const double s = t - t_b;
        const cplx gb = s > 0.0 ? shift * cubic_at(pulses.gB_regular, pulses.grid().t_i + s) / std::sqrt(s) : cplx{};
        sys.rhs(t, Drive{sender(t), gb, 1.0}, in, out);
    };
    auto eval_sigma = [&](double sigma, const cplx* in, cplx* out) {
        const double s = sigma * sigma;
        const double t = t_b + s;
        const cplx gb = 2.0 * shift * cubic_at(pulses.gB_regular, pulses.grid().t_i + s);
        sys.rhs(t, Drive{2.0 * sigma * sender(t), gb, 2.0 * sigma}, in, out);
    };

    record(std::size_t{0}, y);
    for (std::size_t n = 0; n < grid.n_steps; ++n) {
        sender_on = n < sender_steps;
        if (n >= window && n - window < onset_steps) {
            const double sa = std::sqrt(static_cast<double>(n - window) * grid.dt);
            const double sb = std::sqrt(static_cast<double>(n - window + 1) * grid.dt);
            const double hs = (sb - sa) / sub;
            for (int i = 0; i < sub; ++i) st.step(y, sa + i * hs, hs, eval_sigma);
        } else {
            st.step(y, grid.at(n), grid.dt, eval_t);
        }
        record(n + 1, y);
    }
}

Trajectory evolve(const ChannelSpec& spec, const PulsePair& pulses, LossRates rates,
                  const ValidatorOptions& opts) {
    if (rates.kappa < 0.0 || rates.gamma < 0.0) throw ConfigError("loss rates must be non-negative");
    const SectorModel model = single_sector(spec);
    const System sys(spec, {Block{&model, 0, 1}}, rates);
    std::size_t window = 0;
    const TimeGrid grid = run_grid(spec, pulses, opts, window);
    const bool hermitian = rates.kappa == 0.0 && rates.gamma == 0.0;

    Trajectory tr;
    tr.grid = grid;
    tr.alpha.resize(grid.size());
    tr.beta.resize(grid.size());
    tr.c_modes.assign(spec.modes(), std::vector<cplx>(grid.size()));
    tr.norm.resize(grid.size());

    std::vector<cplx> y(sys.dim(), cplx{});
    y[0] = 1.0;
    drive_system(sys, spec, pulses, opts, grid, window, y, [&](std::size_t n, const std::vector<cplx>& s) {
        double nrm = 0.0;
        for (cplx v : s) nrm += std::norm(v);
        tr.alpha[n] = s[0];
        tr.beta[n] = s[1];
        for (std::size_t k = 0; k < spec.modes(); ++k) tr.c_modes[k][n] = s[2 + k];
        tr.norm[n] = nrm;
        const double t = grid.at(n);
        if (!std::isfinite(nrm))
            throw IntegratorFailure("non-finite state in validator at t = " + std::to_string(t), t);
        if (hermitian && std::abs(nrm - 1.0) > opts.norm_tol)
            throw IntegratorFailure("norm drift " + std::to_string(nrm - 1.0) + " at t = " + std::to_string(t), t);
        if (!hermitian && n > 0 && nrm > tr.norm[n - 1] * (1.0 + 1e-12))
            throw IntegratorFailure("norm increased in lossy run at t = " + std::to_string(t), t);
    });
    return tr;
}

}  // namespace

double Trajectory::channel_population(std::size_t n) const {
    double p = 0.0;
    for (const auto& c : c_modes) p += std::norm(c[n]);
    return p;
}

Trajectory evolve_single_excitation(const ChannelSpec& spec, const PulsePair& pulses,
                                    const ValidatorOptions& opts) {
    return evolve(spec, pulses, LossRates{}, opts);
}

Trajectory evolve_with_loss(const ChannelSpec& spec, const PulsePair& pulses, LossRates rates,
                            const ValidatorOptions& opts) {
    return evolve(spec, pulses, rates, opts);
}

LossOutcome loss_inefficiency(const Trajectory& traj, LossRates rates) {
    LossOutcome out;
    const std::size_t last = traj.grid.n_steps;
    out.inefficiency = 1.0 - std::norm(traj.beta[last]);
    out.t_stop = traj.grid.at(last);
    if (rates.gamma > 0.0) {
        for (std::size_t n = 0; n <= last; ++n) {
            const double v = 1.0 - std::norm(traj.beta[n]);
            if (v < out.inefficiency) {
                out.inefficiency = v;
                out.t_stop = traj.grid.at(n);
            }
        }
    }
    return out;
}

Discrepancy compare(const Trajectory& traj, const SynthesisTrace& trace, double t0) {
    Discrepancy d;
    const std::size_t window = trace.alpha.grid.steps_in(t0);
    const std::size_t nf = trace.alpha.grid.n_steps;
    for (std::size_t n = 0; n <= nf; ++n) {
        d.alpha = std::max(d.alpha, std::abs(std::norm(traj.alpha[n]) - std::norm(trace.alpha[n])));
        if (n + window < traj.beta.size())
            d.beta = std::max(d.beta, std::abs(std::norm(traj.beta[n + window]) - trace.beta_mag2[n]));
    }
    return d;
}

std::vector<std::string> two_excitation_basis(const ChannelSpec& spec) {
    return two_sector(spec, 0.0).labels;
}

LeakageReport evolve_leakage(const ChannelSpec& spec, const PulsePair& pulses, double er, double anharm,
                             const ValidatorOptions& opts) {
    if (!(er >= 0.0 && er <= 1.0)) throw ConfigError("er must lie in [0, 1]");
    const SectorModel one = single_sector(spec);
    const SectorModel two = two_sector(spec, anharm);
    const System sys(spec, {Block{&one, 0, 1}, Block{&two, one.dim, 1}}, LossRates{});
    std::size_t window = 0;
    const TimeGrid grid = run_grid(spec, pulses, opts, window);

    std::vector<cplx> y(sys.dim(), cplx{});
    y[0] = std::sqrt(1.0 - er);
    y[one.dim] = std::sqrt(er);
    double drift = 0.0;
    drive_system(sys, spec, pulses, opts, grid, window, y, [&](std::size_t, const std::vector<cplx>& s) {
        double nrm = 0.0;
        for (cplx v : s) nrm += std::norm(v);
        drift = std::max(drift, std::abs(nrm - 1.0));
    });
    if (drift > opts.norm_tol)
        throw IntegratorFailure("norm drift " + std::to_string(drift) + " in leakage run", grid.t_end());

    const Trajectory base = evolve_single_excitation(spec, pulses, opts);
    LeakageReport r;
    r.norm_drift = drift;
    r.baseline = 1.0 - std::norm(base.beta.back());
    r.inefficiency = 1.0 - std::norm(y[1]);
    r.basis = two.labels;
    r.final_populations.resize(two.dim);
    double channel = 0.0;
    for (std::size_t k = 0; k < spec.modes(); ++k) channel += std::norm(y[2 + k]);
    for (std::size_t i = 0; i < two.dim; ++i) {
        const double p = std::norm(y[one.dim + i]);
        r.final_populations[i] = p;
        if (two.photon_exc[i] > 0.0) channel += p;
    }
    r.residual_channel = channel;
    if (er > 0.0) {
        r.pop_2B_over_er = r.final_populations[1] / er;
        r.pop_doubly_over_er = (r.final_populations[0] + r.final_populations[1] + r.final_populations[2]) / er;
    }
    return r;
}

HeisenbergReport evolve_linear_heisenberg(const ChannelSpec& spec, const PulsePair& pulses,
                                          const ValidatorOptions& opts) {
    const SectorModel model = single_sector(spec);
    const std::size_t d = model.dim;
    const System sys(spec, {Block{&model, 0, d}}, LossRates{});
    std::size_t window = 0;
    const TimeGrid grid = run_grid(spec, pulses, opts, window);

    HeisenbergReport r;
    r.grid = grid;
    r.row_norm.resize(grid.size());
    std::vector<cplx> u(d * d, cplx{});  // column c stored at [c*d, (c+1)*d)
    for (std::size_t c = 0; c < d; ++c) u[c * d + c] = 1.0;
    drive_system(sys, spec, pulses, opts, grid, window, u, [&](std::size_t n, const std::vector<cplx>& s) {
        double worst = 0.0;
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = a; b < d; ++b) {
                cplx dot = 0.0;
                for (std::size_t i = 0; i < d; ++i) dot += std::conj(s[a * d + i]) * s[b * d + i];
                worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
            }
        }
        double row = 0.0;
        for (std::size_t c = 0; c < d; ++c) row += std::norm(s[c * d + 1]);
        r.unitarity_error = std::max(r.unitarity_error, worst);
        r.row_norm[n] = row;
        r.row_norm_error = std::max(r.row_norm_error, std::abs(row - 1.0));
    });
    if (r.unitarity_error > 1e-8)
        throw IntegratorFailure("coefficient matrix lost unitarity (" + std::to_string(r.unitarity_error) + ")",
                                grid.t_end());
    r.transfer = u[0 * d + 1];
    r.thermal_weight.resize(spec.modes());
    for (std::size_t k = 0; k < spec.modes(); ++k) r.thermal_weight[k] = std::norm(u[(2 + k) * d + 1]);
    const Trajectory single = evolve_single_excitation(spec, pulses, opts);
    r.single_excitation_beta = std::abs(single.beta.back());
    return r;
}

}  // namespace adsc
