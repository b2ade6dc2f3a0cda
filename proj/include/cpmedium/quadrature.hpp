#pragma once

#include <functional>
#include <vector>

#include "cpmedium/spectral.hpp"

namespace cpmedium {

struct QuadratureSettings {
    double rel_tol = 1e-7;
    double abs_tol = 1e-16;  ///< energy units
    int max_refinements = 12;
    /// Length s of the radial map rho = t / ((1 - t) s); <= 0 selects 1. The
    /// energy routines pass the atom distance Z.
    double radial_scale = 0.0;
    long node_budget = 200'000;

    /// Throws DomainError unless rel_tol >= 1e-12, abs_tol >= 0,
    /// max_refinements >= 0 and node_budget >= 1000.
    void validate() const;
};

struct EnergyResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    double max_wronskian_residual = 0.0;
    bool converged = false;
    /// Total error estimate after the initial pass and after each refinement
    /// level of the angular rule, in energy units.
    std::vector<double> level_errors;
};

using SpectralIntegrand = std::function<double(SpectralPoint)>;

/// E = sign (alpha/pi) int_0^inf dzeta int_0^inf dk k J(zeta, k), in polar
/// coordinates zeta = rho cos(theta), k = rho sin(theta). Both directions use
/// adaptive 15-point Gauss-Kronrod panels; the radial rule runs on
/// t in (0, 1). Angular nodes are evaluated concurrently, all sums are formed
/// in a fixed order. A non-finite J raises IntegrityError naming the point.
EnergyResult integrate_quarter_plane(const SpectralIntegrand& J, int sign, double alpha,
                                     const QuadratureSettings& settings = {});

struct RuleResult {
    double value = 0.0;
    double error = 0.0;
};

/// One 15-point Kronrod rule on [a, b] with the QUADPACK error heuristic.
RuleResult gauss_kronrod15(const std::function<double(double)>& f, double a, double b);

/// Worker threads used for concurrent integrand evaluation: CP_THREADS if set
/// to a positive integer, otherwise the hardware concurrency.
unsigned worker_count();

}  // namespace cpmedium
