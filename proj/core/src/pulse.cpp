#include "adsc/pulse.hpp"

#include <cmath>

namespace adsc {

cplx SenderPulse::operator()(double t) const {
    switch (shape) {
        case Shape::Sine: return g + g * std::sin((t - center) / scale);
        case Shape::Constant: return g;
        case Shape::Zero: break;
    }
    return 0.0;
}

SenderPulse SenderPulse::sine(double g_fsr_units) {
    SenderPulse p;
    p.g = to_angular(g_fsr_units);
    return p;
}

SenderPulse SenderPulse::constant(double g_fsr_units) {
    SenderPulse p;
    p.shape = Shape::Constant;
    p.g = to_angular(g_fsr_units);
    return p;
}

SenderPulse SenderPulse::zero() {
    SenderPulse p;
    p.shape = Shape::Zero;
    return p;
}

const char* to_string(SenderPulse::Shape shape) {
    switch (shape) {
        case SenderPulse::Shape::Sine: return "sine";
        case SenderPulse::Shape::Constant: return "constant";
        case SenderPulse::Shape::Zero: break;
    }
    return "zero";
}

SenderPulse::Shape shape_from_string(const std::string& name) {
    if (name == "sine") return SenderPulse::Shape::Sine;
    if (name == "constant") return SenderPulse::Shape::Constant;
    if (name == "zero") return SenderPulse::Shape::Zero;
    throw ConfigError("unknown pulse shape '" + name + "' (expected sine, constant or zero)");
}

}  // namespace adsc
