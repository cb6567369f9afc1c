#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace adsc {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Frequencies enter the library in units of the free spectral range and are
// stored as angular rates per time unit (time unit = 2*pi / fsr).
inline constexpr double to_angular(double in_fsr_units) { return kTwoPi * in_fsr_units; }
inline constexpr double from_angular(double angular) { return angular / kTwoPi; }

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class NumericalFailure : public Error {
public:
    NumericalFailure(const std::string& what, double time)
        : Error(what), time_(time) {}
    double time() const { return time_; }

private:
    double time_;
};

class IntegratorFailure : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

class SynthesisRefused : public Error {
public:
    using Error::Error;
};

class InconsistentScenario : public Error {
public:
    using Error::Error;
};

struct Box {
    double re_min = 0.0, re_max = 0.0;
    double im_min = 0.0, im_max = 0.0;
};

class UnresolvedRegion : public Error {
public:
    UnresolvedRegion(const std::string& what, Box box) : Error(what), box_(box) {}
    const Box& box() const { return box_; }

private:
    Box box_;
};

}  // namespace adsc
