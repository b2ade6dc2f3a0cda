#include "cpmedium/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "cpmedium/errors.hpp"

namespace cpmedium {

namespace {

double residual_at_spots(const PermittivityProfile& profile, double Z,
                         const std::vector<double>& probes, const RiccatiOptions& riccati) {
    double worst = 0.0;
    for (double r : {0.5, 2.0, 8.0}) {
        for (double theta : {0.2, 0.8, 1.4}) {
            const SpectralPoint pt{r / Z * std::cos(theta), r / Z * std::sin(theta)};
            for (Mode m : {Mode::TE, Mode::TM})
                worst = std::max(worst, wronskian_residual(profile, m, pt, probes, riccati));
        }
    }
    return worst;
}

int energy_sign(Mode mode) { return mode == Mode::TE ? -1 : 1; }

}  // namespace

void AtomSpec::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be finite and positive");
    if (!(Z > 0.0) || !std::isfinite(Z)) throw DomainError("Z must be finite and positive");
}

double vacuum_cp(EnergyMode mode, const AtomSpec& atom) {
    atom.validate();
    const double base = atom.alpha / (16.0 * std::numbers::pi * std::pow(atom.Z, 4));
    switch (mode) {
        case EnergyMode::TE: return -base;
        case EnergyMode::TM: return -5.0 * base;
        case EnergyMode::Total: return -6.0 * base;
    }
    return 0.0;
}

double vacuum_cp(Mode mode, const AtomSpec& atom) {
    return vacuum_cp(mode == Mode::TE ? EnergyMode::TE : EnergyMode::TM, atom);
}

EnergyResult wall_energy(const PermittivityProfile& profile, Mode mode, const AtomSpec& atom,
                         QuadratureSettings settings, const RiccatiOptions& riccati) {
    atom.validate();
    check_wall_geometry(profile, atom.Z);
    if (settings.radial_scale <= 0.0) settings.radial_scale = atom.Z;
    const double Z = atom.Z;
    auto result = integrate_quarter_plane(
        [&](SpectralPoint p) { return wall_integrand(profile, mode, Z, p, riccati); },
        energy_sign(mode), atom.alpha, settings);
    std::vector<double> probes{0.0, 0.5 * Z, Z};
    if (profile.contains(-Z)) probes.push_back(-Z);
    result.max_wronskian_residual = residual_at_spots(profile, Z, probes, riccati);
    return result;
}

EnergyResult halfspace_energy(const PermittivityProfile& prof1, const PermittivityProfile& prof2,
                              Mode mode, const AtomSpec& atom, QuadratureSettings settings,
                              const RiccatiOptions& riccati) {
    atom.validate();
    if (settings.radial_scale <= 0.0) settings.radial_scale = atom.Z;
    const double Z = atom.Z;
    auto result = integrate_quarter_plane(
        [&](SpectralPoint p) { return halfspace_integrand(prof1, prof2, mode, Z, p, riccati); },
        energy_sign(mode), atom.alpha, settings);
    std::vector<double> probes2{0.0, 0.5 * Z, Z};
    double worst = residual_at_spots(prof2, Z, probes2, riccati);
    std::vector<double> probes1{0.0};
    for (double z : {-0.5 * Z, -Z})
        if (prof1.contains(z)) probes1.push_back(z);
    if (probes1.size() > 1) worst = std::max(worst, residual_at_spots(prof1, Z, probes1, riccati));
    result.max_wronskian_residual = worst;
    return result;
}

double ratio_to_vacuum(const EnergyResult& result, Mode mode, const AtomSpec& atom) {
    return result.value / vacuum_cp(mode, atom);
}

}  // namespace cpmedium
