#pragma once

#include "cpmedium/profiles.hpp"
#include "cpmedium/quadrature.hpp"
#include "cpmedium/spectral.hpp"

namespace cpmedium {

enum class EnergyMode { TE, TM, Total };

/// Static isotropic polarizability alpha (length^3, hbar = c = 1) at
/// distance Z > 0 from the interface.
struct AtomSpec {
    double alpha = 1.0;
    double Z = 1.0;

    void validate() const;
};

/// -alpha/(16 pi Z^4) (TE), -5 alpha/(16 pi Z^4) (TM), -3 alpha/(8 pi Z^4) total.
double vacuum_cp(EnergyMode mode, const AtomSpec& atom);
double vacuum_cp(Mode mode, const AtomSpec& atom);

/// Wall (plate at z = 0) energy for `profile` filling z > 0. A non-positive
/// settings.radial_scale is replaced by Z. max_wronskian_residual comes from a
/// fixed set of spot probes.
EnergyResult wall_energy(const PermittivityProfile& profile, Mode mode, const AtomSpec& atom,
                         QuadratureSettings settings = {}, const RiccatiOptions& riccati = {});

/// Interface at z = 0 between prof1 (z < 0) and prof2 (z > 0), atom in prof2.
EnergyResult halfspace_energy(const PermittivityProfile& prof1, const PermittivityProfile& prof2,
                              Mode mode, const AtomSpec& atom, QuadratureSettings settings = {},
                              const RiccatiOptions& riccati = {});

double ratio_to_vacuum(const EnergyResult& result, Mode mode, const AtomSpec& atom);

}  // namespace cpmedium
