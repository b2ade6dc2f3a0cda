#pragma once

// Dormand-Prince 5(4) with FSAL, fixed two-component state. Private to the
// library.

#include <array>
#include <cmath>

namespace cpmedium::detail {

using State2 = std::array<double, 2>;

struct StepResult {
    State2 y;
    State2 dydx;   // derivative at the new point (FSAL)
    State2 error;  // local error estimate per component
};

template <class Rhs>
StepResult dopri5_step(const Rhs& f, double x, const State2& y, const State2& k1, double h) {
    constexpr double a21 = 1.0 / 5.0;
    constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                     a54 = -212.0 / 729.0;
    constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                     a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                     b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                     e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    State2 t{}, k2{}, k3{}, k4{}, k5{}, k6{}, out{};
    for (int i = 0; i < 2; ++i) t[i] = y[i] + h * a21 * k1[i];
    k2 = f(x + h / 5.0, t);
    for (int i = 0; i < 2; ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = f(x + 3.0 * h / 10.0, t);
    for (int i = 0; i < 2; ++i) t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = f(x + 4.0 * h / 5.0, t);
    for (int i = 0; i < 2; ++i)
        t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = f(x + 8.0 * h / 9.0, t);
    for (int i = 0; i < 2; ++i)
        t[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = f(x + h, t);
    for (int i = 0; i < 2; ++i)
        out[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    const State2 k7 = f(x + h, out);

    State2 err{};
    for (int i = 0; i < 2; ++i)
        err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    return {out, k7, err};
}

}  // namespace cpmedium::detail
