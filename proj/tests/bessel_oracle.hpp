#pragma once

// High-precision reference values for I_nu, K_nu from Boost.Math evaluated in
// 50-digit binary floating point. Test-only; the library never calls Boost.

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_50;

struct BesselRef {
    double log_I;
    double log_K;
    double logderiv_I;
    double logderiv_K;
};

inline BesselRef bessel_ref(double nu, double x) {
    const big n(nu), xx(x);
    const big i = boost::math::cyl_bessel_i(n, xx);
    const big k = boost::math::cyl_bessel_k(n, xx);
    const big ip = boost::math::cyl_bessel_i_prime(n, xx);
    const big kp = boost::math::cyl_bessel_k_prime(n, xx);
    return {static_cast<double>(log(i)), static_cast<double>(log(k)),
            static_cast<double>(ip / i), static_cast<double>(kp / k)};
}

}  // namespace oracle
