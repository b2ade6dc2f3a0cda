#pragma once

#include <span>
#include <vector>

#include "cpmedium/profiles.hpp"
#include "cpmedium/quadrature.hpp"
#include "cpmedium/spectral.hpp"

namespace cpmedium {

/// eps = lambda / (a - z)^2 (Minus) or lambda / (a + z)^2 (Plus). Minus needs
/// 0 < Z < a, Plus needs Z > 0.
struct ExactModelSpec {
    double lambda = 1.0;
    double a = 1.0;
    Orientation sign = Orientation::Minus;
    Mode mode = Mode::TE;

    void validate(double Z) const;
    PermittivityProfile profile() const {
        return PermittivityProfile::inverse_square(lambda, a, sign);
    }
};

/// Same quantity as wall_integrand() for the inverse-square profile, from the
/// closed-form solutions d^{1/2} {I,K}_nu(k d) (TE) and d^{-1/2} {I,K}_nu(k d)
/// (TM), d = a -+ z, nu = sqrt(lambda zeta^2 + 1/4). Products are formed from
/// logarithms. Needs k > 0.
double exact_wall_integrand(const ExactModelSpec& spec, double Z, SpectralPoint point);

/// Quarter-plane energy of exact_wall_integrand. radial_scale <= 0 selects Z.
EnergyResult exact_wall_energy(const ExactModelSpec& spec, double Z, double alpha,
                               QuadratureSettings settings = {});

/// TE energy of the Plus model written over (nu, k):
///   E = -(alpha / (pi lambda^{3/2})) (a + Z) int dk k int_{1/2}^inf dnu
///         nu sqrt(nu^2 - 1/4) I_nu(ka)/K_nu(ka) K_nu(k(a + Z))^2.
/// The nu integral runs on nu = 1/2 + Z w^2, so the square root is never
/// evaluated below nu = 1/2. `spec.sign` must be Plus; spec.mode is ignored.
EnergyResult te_energy_quadpot2(const ExactModelSpec& spec, double Z, double alpha,
                                QuadratureSettings settings = {});

/// First-order small-distance ratio to the vacuum energy for lambda = a^2:
/// 1 -+ (9/5) Z/a (TE), 1 -+ (97/45) Z/a (TM); the upper sign is Minus. The TM
/// Plus line follows the TE sign reversal by analogy.
double perturbative_ratio(Mode mode, Orientation sign, double Z_over_a);

struct FigureRow {
    double Z_over_a = 0.0;
    double ratio_numeric = 0.0;
    double ratio_perturbative = 0.0;
    bool converged = false;
};

/// Figure 1: TE Minus, 2: TM Minus, 3: TE Plus (through te_energy_quadpot2),
/// with lambda = a = 1. Throws DomainError for other values.
std::vector<FigureRow> figure_data(int which, std::span<const double> Z_grid,
                                   const QuadratureSettings& settings = {});

/// 10 equally spaced points on [0.02, 0.5] (figures 1, 2) or [0.02, 1] (3).
std::vector<double> default_figure_grid(int which);

}  // namespace cpmedium
