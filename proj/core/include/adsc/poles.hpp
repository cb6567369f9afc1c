#pragma once

#include <vector>

#include "adsc/channel.hpp"

namespace adsc {

// All values in this module are angular; helpers convert to fsr units.
cplx characteristic_fn(const ChannelSpec& spec, double g, cplx s);
cplx characteristic_derivative(const ChannelSpec& spec, double g, cplx s);

struct PoleSet {
    std::vector<cplx> poles;
    std::vector<double> residual;
    double slowest_decay = 0.0;  // max Re(s), angular
    Box search_box;
    int winding_count = 0;
};

Box default_search_box(const ChannelSpec& spec);

PoleSet find_poles(const ChannelSpec& spec, double g, const Box& box);
inline PoleSet find_poles(const ChannelSpec& spec, double g) {
    return find_poles(spec, g, default_search_box(spec));
}

// Real roots z of z - g^2 sum 1/(z + delta_k); poles of the full-history
// problem are s = i z.
std::vector<double> single_qubit_poles(const ChannelSpec& spec, double g);

// Residue-weighted reconstruction sum_p e^{s_p t} / f'(s_p).
cplx pole_expansion(const ChannelSpec& spec, double g, const PoleSet& set, double t);

}  // namespace adsc
