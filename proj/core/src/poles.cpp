#include "adsc/poles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/tools/roots.hpp>

namespace adsc {

namespace {

// (1 - e^{-z t0}) / z and its derivative, with the removable point at z = 0.
struct WindowTerm {
    cplx value;
    cplx slope;
};

WindowTerm window_term(cplx z, double t0) {
    const cplx w = z * t0;
    if (std::abs(w) < 0.5) {
        // t0 * sum_n (-w)^n / (n+1)!  and  t0^2 * sum_n (n+1) (-w)^n / (n+2)!
        cplx v = 0.0, d = 0.0, p = 1.0;
        double fact = 1.0;  // (n+1)!
        for (int n = 0; n < 22; ++n) {
            v += p / fact;
            d += static_cast<double>(n + 1) * p / (fact * (n + 2));
            p *= -w;
            fact *= (n + 2);
        }
        return {t0 * v, -t0 * t0 * d};
    }
    const cplx e = std::exp(-w);
    return {(1.0 - e) / z, (t0 * z * e - (1.0 - e)) / (z * z)};
}

struct Finder {
    const ChannelSpec& spec;
    double g;
    double scale;
    PoleSet& out;

    cplx f(cplx s) const { return characteristic_fn(spec, g, s); }

    // Total change of arg f along the segment a -> b.
    double arg_segment(cplx a, cplx b, cplx fa, cplx fb, int depth) const {
        const double d = std::arg(fb / fa);
        if (depth >= 4 && std::abs(d) < 0.25) return d;
        if (depth > 48) throw UnresolvedRegion("root on or near a cell boundary", Box{});
        const cplx m = 0.5 * (a + b);
        const cplx fm = f(m);
        if (std::abs(fm) < 1e-13 * scale) throw UnresolvedRegion("root on a cell boundary", Box{});
        return arg_segment(a, m, fa, fm, depth + 1) + arg_segment(m, b, fm, fb, depth + 1);
    }

    int count(const Box& b) const {
        const cplx c[4] = {{b.re_min, b.im_min}, {b.re_max, b.im_min}, {b.re_max, b.im_max}, {b.re_min, b.im_max}};
        cplx fc[4];
        for (int i = 0; i < 4; ++i) {
            fc[i] = f(c[i]);
            if (std::abs(fc[i]) < 1e-13 * scale) throw UnresolvedRegion("root on a cell corner", b);
        }
        double total = 0.0;
        for (int i = 0; i < 4; ++i) total += arg_segment(c[i], c[(i + 1) % 4], fc[i], fc[(i + 1) % 4], 0);
        const double turns = total / kTwoPi;
        const double n = std::round(turns);
        if (std::abs(turns - n) > 0.05) throw UnresolvedRegion("winding number not integral", b);
        return static_cast<int>(n);
    }

    bool newton(const Box& b, cplx& root) const {
        cplx s{0.5 * (b.re_min + b.re_max), 0.5 * (b.im_min + b.im_max)};
        const double size = std::max(b.re_max - b.re_min, b.im_max - b.im_min);
        for (int it = 0; it < 60; ++it) {
            const cplx step = f(s) / characteristic_derivative(spec, g, s);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return false;
            s -= step;
            const double margin = 1e-9 * size;
            if (s.real() < b.re_min - margin || s.real() > b.re_max + margin || s.imag() < b.im_min - margin ||
                s.imag() > b.im_max + margin)
                return false;
            if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(s))) {
                root = s;
                return true;
            }
        }
        return false;
    }

    void add(cplx s) {
        for (const cplx& p : out.poles)
            if (std::abs(p - s) < 1e-8) return;
        out.poles.push_back(s);
        out.residual.push_back(std::abs(f(s)));
    }

    // Splits slightly off-centre so symmetric spectra do not put roots on cuts.
    void solve(const Box& b, int n, int depth) {
        if (n <= 0) return;
        cplx root;
        if (n == 1 && newton(b, root)) {
            add(root);
            return;
        }
        const double wr = b.re_max - b.re_min, wi = b.im_max - b.im_min;
        if (std::max(wr, wi) < 1e-9 * scale || depth > 80)
            throw UnresolvedRegion("root isolation failed after subdivision floor", b);
        constexpr double kCut = 0.4937;
        Box lo = b, hi = b;
        if (wr >= wi) {
            lo.re_max = hi.re_min = b.re_min + kCut * wr;
        } else {
            lo.im_max = hi.im_min = b.im_min + kCut * wi;
        }
        const int nlo = count(lo);
        solve(lo, nlo, depth + 1);
        solve(hi, n - nlo, depth + 1);
    }
};

}  // namespace

cplx characteristic_fn(const ChannelSpec& spec, double g, cplx s) {
    const cplx sum = spec.mode_sum([&](std::size_t k) { return window_term(s + kI * spec.delta[k], spec.t0).value; });
    return s + g * g * sum;
}

cplx characteristic_derivative(const ChannelSpec& spec, double g, cplx s) {
    const cplx sum = spec.mode_sum([&](std::size_t k) { return window_term(s + kI * spec.delta[k], spec.t0).slope; });
    return 1.0 + g * g * sum;
}

Box default_search_box(const ChannelSpec& spec) {
    const auto [lo, hi] = std::minmax_element(spec.delta.begin(), spec.delta.end());
    Box b;
    b.re_min = -2.0 * spec.fsr;
    b.re_max = 0.5 * spec.fsr;
    b.im_min = std::min(*lo, -*hi) - 2.0 * spec.fsr;
    b.im_max = std::max(*hi, -*lo) + 2.0 * spec.fsr;
    return b;
}

PoleSet find_poles(const ChannelSpec& spec, double g, const Box& box) {
    PoleSet set;
    set.search_box = box;
    if (!(box.re_max > box.re_min && box.im_max > box.im_min)) throw ConfigError("search box is empty");
    Finder finder{spec, g, std::max(1.0, spec.fsr), set};
    set.winding_count = finder.count(box);
    finder.solve(box, set.winding_count, 0);
    if (static_cast<int>(set.poles.size()) != set.winding_count)
        throw UnresolvedRegion("located " + std::to_string(set.poles.size()) + " roots but the box winds " +
                                   std::to_string(set.winding_count) + " times",
                               box);
    std::vector<std::size_t> order(set.poles.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (set.poles[a].imag() != set.poles[b].imag()) return set.poles[a].imag() < set.poles[b].imag();
        return set.poles[a].real() < set.poles[b].real();
    });
    PoleSet sorted = set;
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted.poles[i] = set.poles[order[i]];
        sorted.residual[i] = set.residual[order[i]];
    }
    sorted.slowest_decay = -std::numeric_limits<double>::infinity();
    for (const cplx& p : sorted.poles) sorted.slowest_decay = std::max(sorted.slowest_decay, p.real());
    if (sorted.poles.empty()) sorted.slowest_decay = std::numeric_limits<double>::quiet_NaN();
    return sorted;
}

std::vector<double> single_qubit_poles(const ChannelSpec& spec, double g) {
    std::vector<double> q;
    for (double d : spec.delta) q.push_back(-d);
    std::sort(q.begin(), q.end());
    const double g2 = g * g;
    auto h = [&](double z) {
        double s = 0.0;
        for (double p : q) s += 1.0 / (z - p);
        return z - g2 * s;
    };
    std::vector<double> roots;
    if (g == 0.0) {
        roots = q;
        roots.push_back(0.0);
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    auto solve = [&](double a, double b) {
        std::uintmax_t iters = 200;
        const auto r = boost::math::tools::toms748_solve(h, a, b, boost::math::tools::eps_tolerance<double>(52), iters);
        if (iters >= 200) throw UnresolvedRegion("bracketed root did not converge", Box{a, b, 0.0, 0.0});
        return 0.5 * (r.first + r.second);
    };
    auto eps_at = [&](double p) { return 1e-12 * std::max(1.0, std::abs(p)); };
    double a = q.front() - spec.fsr;
    while (h(a) >= 0.0) a = q.front() - 2.0 * (q.front() - a);
    roots.push_back(solve(a, q.front() - eps_at(q.front())));
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
        const double lo = q[i] + eps_at(q[i]), hi = q[i + 1] - eps_at(q[i + 1]);
        if (!(h(lo) < 0.0 && h(hi) > 0.0)) throw UnresolvedRegion("sign change missing between poles", Box{lo, hi, 0, 0});
        roots.push_back(solve(lo, hi));
    }
    double b = q.back() + spec.fsr;
    while (h(b) <= 0.0) b = q.back() + 2.0 * (b - q.back());
    roots.push_back(solve(q.back() + eps_at(q.back()), b));
    if (roots.size() != spec.modes() + 1) throw UnresolvedRegion("wrong number of real roots", Box{});
    return roots;
}

cplx pole_expansion(const ChannelSpec& spec, double g, const PoleSet& set, double t) {
    cplx total = 0.0;
    for (const cplx& p : set.poles) total += std::exp(p * t) / characteristic_derivative(spec, g, p);
    return total;
}

}  // namespace adsc
