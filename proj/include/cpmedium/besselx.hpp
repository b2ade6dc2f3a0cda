#pragma once

namespace cpmedium {

/// Modified Bessel functions of real order at positive real argument.
///
/// The raw values I_nu(x), K_nu(x) span hundreds of decades over the
/// supported range, so the canonical outputs are the scaled logarithms and
/// the log-derivatives. `scaled_I` and `scaled_K` are exp() of the scaled logs
/// and saturate (to 0 or inf) only where the scaled value itself is not
/// representable, e.g. K_500(1e-4).
struct BesselEval {
    double order = 0.0;
    double argument = 0.0;
    double scaled_I = 0.0;    ///< I_nu(x) e^{-x}
    double scaled_K = 0.0;    ///< K_nu(x) e^{+x}
    double logderiv_I = 0.0;  ///< I_nu'(x) / I_nu(x)
    double logderiv_K = 0.0;  ///< K_nu'(x) / K_nu(x)
    double log_scaled_I = 0.0;  ///< ln I_nu(x) - x
    double log_scaled_K = 0.0;  ///< ln K_nu(x) + x

    double log_I() const { return log_scaled_I + argument; }
    double log_K() const { return log_scaled_K - argument; }
};

inline constexpr double kBesselMaxOrder = 1e5;
inline constexpr double kBesselMinArgument = 1e-12;
inline constexpr double kBesselMaxArgument = 1e6;

/// Orders below 20 use Temme's series (x <= 2) or Steed's continued fraction
/// (x > 2) for K at the reduced order, forward recurrence in the order, CF1
/// for I'/I, and the Wronskian for I. Orders >= 20 use the uniform large-order
/// expansion. Throws DomainError outside
/// nu in [0, 1e5], x in [1e-12, 1e6] or on non-finite input.
BesselEval bessel_pair(double nu, double x);

}  // namespace cpmedium
