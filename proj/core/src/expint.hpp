#pragma once

#include <cmath>
#include <complex>

#include "adsc/types.hpp"

namespace adsc::detail {

// phi_k(z) = sum_n z^n / (n + k)!, the exponential integrators' weight functions.
struct Phi {
    cplx e, p1, p2, p3;
};

inline Phi phi_functions(cplx z) {
    Phi out;
    out.e = std::exp(z);
    if (std::abs(z) < 0.5) {
        // Series; 24 terms are well past round-off for |z| < 0.5.
        cplx term = 1.0;  // z^n / (n+3)! built from z^n / n!
        cplx s1 = 0.0, s2 = 0.0, s3 = 0.0;
        double f1 = 1.0, f2 = 0.5, f3 = 1.0 / 6.0;  // 1/(n+k)! at n = 0
        for (int n = 0; n < 24; ++n) {
            s1 += term * f1;
            s2 += term * f2;
            s3 += term * f3;
            term *= z;
            f1 /= (n + 2);
            f2 /= (n + 3);
            f3 /= (n + 4);
        }
        out.p1 = s1;
        out.p2 = s2;
        out.p3 = s3;
    } else {
        out.p1 = (out.e - 1.0) / z;
        out.p2 = (out.e - 1.0 - z) / (z * z);
        out.p3 = (out.e - 1.0 - z - 0.5 * z * z) / (z * z * z);
    }
    return out;
}

// int_a^b e^{i w tau} x(tau) dtau with x linear from xa to xb.
inline cplx exp_linear_integral(double w, double a, double b, cplx xa, cplx xb) {
    const double h = b - a;
    if (h == 0.0) return 0.0;
    const Phi p = phi_functions(kI * w * h);
    return std::exp(kI * w * a) * h * (p.p2 * xa + (p.p1 - p.p2) * xb);
}

}  // namespace adsc::detail
