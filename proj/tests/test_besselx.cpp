#include <cmath>
#include <numbers>
#include <vector>

#include "bessel_oracle.hpp"
#include "cpmedium/besselx.hpp"
#include "cpmedium/errors.hpp"
#include "doctest.h"

using cpmedium::bessel_pair;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

// I K (ld_K - ld_I) + 1/x, relative to 1/x, formed in log space.
double wronskian_defect(const cpmedium::BesselEval& b) {
    const double ik = std::exp(b.log_scaled_I + b.log_scaled_K);
    return std::abs(ik * (b.logderiv_K - b.logderiv_I) * b.argument + 1.0);
}

}  // namespace

TEST_CASE("half-order closed forms") {
    const double pi = std::numbers::pi;
    SUBCASE("K_{1/2}(2) scaled") {
        const auto b = bessel_pair(0.5, 2.0);
        CHECK(rel(b.scaled_K, std::sqrt(pi / 4.0)) < 1e-12);
        CHECK(rel(b.scaled_K, 0.8862269255) < 1e-10);
    }
    SUBCASE("I_{1/2}(1) scaled") {
        const auto b = bessel_pair(0.5, 1.0);
        const double want = std::sqrt(2.0 / pi) * std::sinh(1.0) * std::exp(-1.0);
        CHECK(rel(b.scaled_I, want) < 1e-12);
        CHECK(std::abs(b.scaled_I - 0.3449513139) < 1e-10);
    }
    SUBCASE("orders 1/2 and 3/2 across the argument range") {
        for (double x : {1e-8, 1e-4, 0.1, 1.0, 2.0, 2.5, 10.0, 100.0, 1e4, 1e5}) {
            const double em2x = std::expm1(-2.0 * x);
            const double sI = std::sqrt(1.0 / (2.0 * pi * x)) * -em2x;  // sinh(x) e^{-x} sqrt(2/(pi x))
            const double sK = std::sqrt(pi / (2.0 * x));
            const auto h = bessel_pair(0.5, x);
            CHECK(rel(h.scaled_I, sI) < 1e-10);
            CHECK(rel(h.scaled_K, sK) < 1e-10);
            // K_{3/2} = K_{1/2} (1 + 1/x); I_{3/2} = sqrt(2/(pi x)) (cosh x - sinh x / x)
            const auto t = bessel_pair(1.5, x);
            CHECK(rel(t.scaled_K, sK * (1.0 + 1.0 / x)) < 1e-10);
            if (x > 1e-3) {
                const double ch = 0.5 * (2.0 + em2x);  // cosh(x) e^{-x}
                const double sh = -0.5 * em2x;              // sinh(x) e^{-x}
                CHECK(rel(t.scaled_I, std::sqrt(2.0 / (pi * x)) * (ch - sh / x)) < 1e-10);
            }
        }
    }
}

TEST_CASE("Wronskian at nu = 3.7, x = 5.1 against high-precision oracle") {
    const auto b = bessel_pair(3.7, 5.1);
    const auto ref = oracle::bessel_ref(3.7, 5.1);
    CHECK(rel(b.log_I(), ref.log_I) < 1e-12);
    CHECK(rel(b.log_K(), ref.log_K) < 1e-12);
    CHECK(wronskian_defect(b) < 1e-12);
    const double ik = std::exp(ref.log_I + ref.log_K);
    CHECK(std::abs(ik * (ref.logderiv_K - ref.logderiv_I) * 5.1 + 1.0) < 1e-14);
}

TEST_CASE("agreement with high-precision oracle over the supported range") {
    const std::vector<double> orders{0.0, 0.25, 0.5, 0.9, 1.0, 2.3, 5.0, 12.5, 19.99,
                                     20.0, 20.01, 37.2, 50.0, 500.0, 1e4};
    const std::vector<double> args{1e-8, 1e-4, 0.03, 0.7, 1.99, 2.01, 7.5, 30.0,
                                   300.0, 1e4, 1e5};
    for (double nu : orders) {
        for (double x : args) {
            CAPTURE(nu);
            CAPTURE(x);
            const auto b = bessel_pair(nu, x);
            const auto ref = oracle::bessel_ref(nu, x);
            // Relative accuracy of the values, i.e. absolute accuracy of the logs.
            CHECK(std::abs(b.log_I() - ref.log_I) < 1e-10 * std::max(1.0, std::abs(ref.log_I) * 1e-3));
            CHECK(std::abs(b.log_K() - ref.log_K) < 1e-10 * std::max(1.0, std::abs(ref.log_K) * 1e-3));
            CHECK(rel(b.logderiv_I, ref.logderiv_I) < 1e-10);
            CHECK(rel(b.logderiv_K, ref.logderiv_K) < 1e-10);
        }
    }
}

TEST_CASE("Wronskian identity on the log-spaced grid") {
    for (double nu : {0.5, 1.0, 5.0, 50.0, 500.0}) {
        for (double x = 1e-4; x <= 1.0001e4; x *= std::sqrt(10.0)) {
            CAPTURE(nu);
            CAPTURE(x);
            CHECK(wronskian_defect(bessel_pair(nu, x)) < 1e-12);
        }
    }
}

TEST_CASE("recurrence K_{nu+1} = K_{nu-1} + (2 nu / x) K_nu in scaled form") {
    for (double nu : {1.0, 1.3, 4.5, 19.5, 20.0, 20.7, 80.0, 600.0}) {
        for (double x : {1e-3, 0.5, 3.0, 25.0, 400.0}) {
            CAPTURE(nu);
            CAPTURE(x);
            const auto lo = bessel_pair(nu - 1.0, x);
            const auto mid = bessel_pair(nu, x);
            const auto hi = bessel_pair(nu + 1.0, x);
            // divide through by K_{nu+1}
            const double a = std::exp(lo.log_K() - hi.log_K());
            const double b = (2.0 * nu / x) * std::exp(mid.log_K() - hi.log_K());
            CHECK(std::abs(a + b - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("monotonicity and signs") {
    for (double x : {1e-3, 0.4, 3.0, 60.0}) {
        double prev = -INFINITY;
        for (double nu : {0.0, 0.3, 1.0, 2.5, 10.0, 19.9, 20.0, 40.0, 200.0}) {
            const auto b = bessel_pair(nu, x);
            CHECK(b.log_scaled_K > prev);
            prev = b.log_scaled_K;
            CHECK(b.logderiv_K < 0.0);
            CHECK(b.logderiv_I > 0.0);
        }
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(bessel_pair(-0.1, 1.0), cpmedium::DomainError);
    CHECK_THROWS_AS(bessel_pair(1.0, 0.0), cpmedium::DomainError);
    CHECK_THROWS_AS(bessel_pair(1.0, -2.0), cpmedium::DomainError);
    CHECK_THROWS_AS(bessel_pair(std::nan(""), 1.0), cpmedium::DomainError);
    CHECK_THROWS_AS(bessel_pair(1.0, INFINITY), cpmedium::DomainError);
    CHECK_THROWS_AS(bessel_pair(2e5, 1.0), cpmedium::DomainError);
}
