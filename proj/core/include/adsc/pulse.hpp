#pragma once

#include <string>

#include "adsc/types.hpp"

namespace adsc {

// Sender coupling family. Sine: g + g*sin((t - center)/scale).
struct SenderPulse {
    enum class Shape { Sine, Constant, Zero };

    Shape shape = Shape::Sine;
    double g = 0.0;  // angular amplitude
    double center = 5.0;
    double scale = 10.0 * kPi;

    cplx operator()(double t) const;

    static SenderPulse sine(double g_fsr_units);
    static SenderPulse constant(double g_fsr_units);
    static SenderPulse zero();
};

const char* to_string(SenderPulse::Shape shape);
SenderPulse::Shape shape_from_string(const std::string& name);

}  // namespace adsc
