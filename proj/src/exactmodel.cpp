#include "cpmedium/exactmodel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cpmedium/besselx.hpp"
#include "cpmedium/energy.hpp"
#include "cpmedium/errors.hpp"

namespace cpmedium {

namespace {

constexpr double kUnderflowExponent = 800.0;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

void ExactModelSpec::validate(double Z) const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive");
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("a must be positive");
    if (!(Z > 0.0) || !std::isfinite(Z)) throw DomainError("Z must be finite and positive");
    if (sign == Orientation::Minus && Z >= a)
        throw DomainError("permittivity singular at z = " + fmt(a) +
                          ", between the plate and the atom at Z = " + fmt(Z));
}

double exact_wall_integrand(const ExactModelSpec& spec, double Z, SpectralPoint point) {
    spec.validate(Z);
    if (!(point.k > 0.0) || !(point.zeta >= 0.0) || !std::isfinite(point.k) ||
        !std::isfinite(point.zeta))
        throw DomainError("exact integrand needs k > 0 and zeta >= 0");
    const double a = spec.a;
    const bool minus = spec.sign == Orientation::Minus;
    const double d = minus ? a - Z : a + Z;
    const double eps_min = spec.lambda / std::pow(std::max(a, d), 2);
    const double k = point.k;
    if (2.0 * Z * std::sqrt(k * k + point.zeta * point.zeta * eps_min) > kUnderflowExponent)
        return 0.0;

    const double nu = std::sqrt(spec.lambda * point.zeta * point.zeta + 0.25);
    const BesselEval at_plate = bessel_pair(nu, k * a);
    const BesselEval at_atom = bessel_pair(nu, k * d);
    // G~(0)/F(0) F(Z)^2 up to powers of d, with the exponentials cancelled.
    const double log_amp =
        minus ? at_plate.log_scaled_K - at_plate.log_scaled_I + 2.0 * at_atom.log_scaled_I - 2.0 * k * Z
              : at_plate.log_scaled_I - at_plate.log_scaled_K + 2.0 * at_atom.log_scaled_K - 2.0 * k * Z;
    if (spec.mode == Mode::TE) return point.zeta * point.zeta * d * std::exp(log_amp);

    const double ld_f_plate = minus ? at_plate.logderiv_I : at_plate.logderiv_K;
    const double ld_g_plate = minus ? at_plate.logderiv_K : at_plate.logderiv_I;
    const double ld_f_atom = minus ? at_atom.logderiv_I : at_atom.logderiv_K;
    const double ratio = (-0.5 / a + k * ld_g_plate) / (-0.5 / a + k * ld_f_plate);
    const double slope = -0.5 / d + k * ld_f_atom;
    return d * d * d / spec.lambda * std::exp(log_amp) * ratio * (slope * slope + k * k);
}

EnergyResult exact_wall_energy(const ExactModelSpec& spec, double Z, double alpha,
                               QuadratureSettings settings) {
    spec.validate(Z);
    if (settings.radial_scale <= 0.0) settings.radial_scale = Z;
    return integrate_quarter_plane(
        [&](SpectralPoint p) { return exact_wall_integrand(spec, Z, p); },
        spec.mode == Mode::TE ? -1 : 1, alpha, settings);
}

EnergyResult te_energy_quadpot2(const ExactModelSpec& spec, double Z, double alpha,
                                QuadratureSettings settings) {
    spec.validate(Z);
    if (spec.sign != Orientation::Plus)
        throw DomainError("the nu-variable form is defined for the plus model only");
    if (settings.radial_scale <= 0.0) settings.radial_scale = Z;
    const double a = spec.a;
    const double d = a + Z;
    const double log_ratio = std::log(d / a);
    // nu = 1/2 + Z w^2: dnu = 2 Z w dw and sqrt(nu^2 - 1/4) = w sqrt(Z (nu + 1/2)).
    const double pref = d / std::pow(spec.lambda, 1.5) * 2.0 * std::pow(Z, 1.5);
    const auto J = [&](SpectralPoint p) {
        const double w = p.zeta;
        const double k = p.k;
        const double nu = 0.5 + Z * w * w;
        if (2.0 * k * Z > kUnderflowExponent || 2.0 * nu * log_ratio > kUnderflowExponent) return 0.0;
        const BesselEval at_plate = bessel_pair(nu, k * a);
        const BesselEval at_atom = bessel_pair(nu, k * d);
        const double log_amp = at_plate.log_scaled_I - at_plate.log_scaled_K +
                               2.0 * at_atom.log_scaled_K - 2.0 * k * Z;
        return pref * w * w * nu * std::sqrt(nu + 0.5) * std::exp(log_amp);
    };
    return integrate_quarter_plane(J, -1, alpha, settings);
}

double perturbative_ratio(Mode mode, Orientation sign, double Z_over_a) {
    const double slope = mode == Mode::TE ? 9.0 / 5.0 : 97.0 / 45.0;
    return sign == Orientation::Minus ? 1.0 - slope * Z_over_a : 1.0 + slope * Z_over_a;
}

std::vector<FigureRow> figure_data(int which, std::span<const double> Z_grid,
                                   const QuadratureSettings& settings) {
    if (which < 1 || which > 3) throw DomainError("figure must be 1, 2 or 3");
    ExactModelSpec spec;
    spec.sign = which == 3 ? Orientation::Plus : Orientation::Minus;
    spec.mode = which == 2 ? Mode::TM : Mode::TE;
    for (double x : Z_grid) spec.validate(x * spec.a);

    std::vector<FigureRow> rows;
    rows.reserve(Z_grid.size());
    for (double x : Z_grid) {
        const double Z = x * spec.a;
        const EnergyResult r =
            which == 3 ? te_energy_quadpot2(spec, Z, 1.0, settings) : exact_wall_energy(spec, Z, 1.0, settings);
        rows.push_back({x, ratio_to_vacuum(r, spec.mode, {1.0, Z}),
                        perturbative_ratio(spec.mode, spec.sign, x), r.converged});
    }
    return rows;
}

std::vector<double> default_figure_grid(int which) {
    if (which < 1 || which > 3) throw DomainError("figure must be 1, 2 or 3");
    const double lo = 0.02, hi = which == 3 ? 1.0 : 0.5;
    std::vector<double> grid(10);
    for (int i = 0; i < 10; ++i) grid[i] = lo + (hi - lo) * i / 9.0;
    return grid;
}

}  // namespace cpmedium
