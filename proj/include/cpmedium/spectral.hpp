#pragma once

#include <span>
#include <vector>

#include "cpmedium/profiles.hpp"

namespace cpmedium {

enum class Mode { TE, TM };

/// One node (zeta, k) of the imaginary-frequency / transverse-wavenumber
/// quarter plane. Integrands require (zeta, k) != (0, 0).
struct SpectralPoint {
    double zeta = 0.0;
    double k = 0.0;
};

/// Where the fundamental solution is pinned.
///
///  - FarField: the solution that decays toward the upper end of the
///    profile's domain (+inf, or vanishes at an upper pole). This is F.
///  - Singularity: the solution that vanishes at the lower end (-inf, or the
///    lower pole of the continued profile). This is G-tilde (or G_1).
///  - Interface: continue a solution from a given Riccati value at `z`
///    toward larger z. TE y and TM u are both continuous across a planar
///    interface, so the value carries over unchanged.
struct Anchor {
    enum class Kind { FarField, Singularity, Interface };
    Kind kind = Kind::FarField;
    double z = 0.0;
    double value = 0.0;

    static Anchor far_field() { return {Kind::FarField, 0.0, 0.0}; }
    static Anchor singularity() { return {Kind::Singularity, 0.0, 0.0}; }
    static Anchor interface(double z, double riccati_value) {
        return {Kind::Interface, z, riccati_value};
    }
};

struct RiccatiOptions {
    double rel_tol = 1e-10;
    /// Far-field starts sit where the accumulated decay exponent, the integral
    /// of sqrt(k^2 + zeta^2 eps) from the nearest requested position, reaches
    /// this value.
    double far_field_decay = 30.0;
    /// Start distance from a finite pole, in units of the profile's a.
    double pole_offset = 1e-6;
    long max_steps = 5'000'000;
};

/// Overflow-free representation of a fundamental solution f.
///
/// TE stores y = f'/f, TM stores u = f'/(eps f). `log_magnitude[i]` is
/// ln(f(z_i) / f(z_0)), z_0 = positions.front(). The overall normalization of
/// f is carried in `log_norm` only; no integrand reads it.
struct LogDerivState {
    Mode mode = Mode::TE;
    std::vector<double> positions;
    std::vector<double> riccati;
    std::vector<double> log_magnitude;
    double log_norm = 0.0;

    /// ln(f(positions.back()) / f(positions.front())).
    double growth() const { return log_magnitude.back() - log_magnitude.front(); }
};

/// Integrates the TE Riccati equation y' = k^2 + zeta^2 eps - y^2 or the TM one
/// u' = k^2/eps + zeta^2 - eps u^2, with ln f accumulated alongside, from the
/// anchor through every requested position. Throws DomainError for positions
/// outside the profile's analytic region and IntegrityError on a Riccati
/// blow-up (a node of f, impossible for eps > 0).
LogDerivState riccati_solve(const PermittivityProfile& profile, Mode mode, SpectralPoint point,
                            Anchor anchor, std::span<const double> positions,
                            const RiccatiOptions& options = {});

/// Wall integrands. The plate sits at z = 0, the atom at Z > 0. The energies
/// are E_TE = -(alpha/pi) int dzeta dk k J_TE and E_TM = +(alpha/pi) int k J_TM.
double te_wall_integrand(const PermittivityProfile& profile, double Z, SpectralPoint point,
                         const RiccatiOptions& options = {});
double tm_wall_integrand(const PermittivityProfile& profile, double Z, SpectralPoint point,
                         const RiccatiOptions& options = {});
double wall_integrand(const PermittivityProfile& profile, Mode mode, double Z,
                      SpectralPoint point, const RiccatiOptions& options = {});

/// Assembly from precomputed states: `decaying` holds F at positions {0, Z},
/// `background` holds G-tilde with position 0 first. `eps_at_Z` is used by TM
/// only.
double wall_integrand_from(Mode mode, SpectralPoint point, const LogDerivState& decaying,
                           const LogDerivState& background, double eps_at_Z);

/// Interface between prof1 (z < 0) and prof2 (z > 0), atom at Z > 0 in
/// medium 2. Same sign conventions as the wall integrands.
double halfspace_te_integrand(const PermittivityProfile& prof1, const PermittivityProfile& prof2,
                              double Z, SpectralPoint point, const RiccatiOptions& options = {});
double halfspace_tm_integrand(const PermittivityProfile& prof1, const PermittivityProfile& prof2,
                              double Z, SpectralPoint point, const RiccatiOptions& options = {});
double halfspace_integrand(const PermittivityProfile& prof1, const PermittivityProfile& prof2,
                           Mode mode, double Z, SpectralPoint point,
                           const RiccatiOptions& options = {});

/// max over probes of |[F, G~](z) / [F, G~](z_0) - 1|; TM uses the bracket
/// divided by eps, which is the constant one.
double wronskian_residual(const PermittivityProfile& profile, Mode mode, SpectralPoint point,
                          std::span<const double> z_probes, const RiccatiOptions& options = {});

/// Throws DomainError unless 0 and Z lie in the profile's analytic region.
void check_wall_geometry(const PermittivityProfile& profile, double Z);

}  // namespace cpmedium
