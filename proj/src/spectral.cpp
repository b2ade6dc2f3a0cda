#include "cpmedium/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cpmedium/errors.hpp"
#include "dopri5.hpp"

namespace cpmedium {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void check_point(SpectralPoint p) {
    if (!std::isfinite(p.zeta) || !std::isfinite(p.k) || p.zeta < 0.0 || p.k < 0.0)
        throw DomainError("spectral point must have finite zeta >= 0 and k >= 0");
    if (p.zeta == 0.0 && p.k == 0.0)
        throw DomainError("spectral point (0, 0) is excluded from integrand evaluation");
}

double decay_rate(const FrozenProfile& eps, SpectralPoint p, double z) {
    return std::sqrt(p.k * p.k + p.zeta * p.zeta * eps(z));
}

// Walks outward from z_ref until the WKB decay exponent reaches `target`.
double far_point(const FrozenProfile& eps, SpectralPoint p, double z_ref, double dir,
                 double target) {
    double z = z_ref;
    double q = decay_rate(eps, p, z);
    double acc = 0.0;
    for (int i = 0; i < 100000 && acc < target; ++i) {
        const double dz = 1.0 / q;
        const double zn = z + dir * dz;
        const double qn = decay_rate(eps, p, zn);
        acc += 0.5 * (q + qn) * dz;
        z = zn;
        q = qn;
    }
    return z;
}

// Two-term Frobenius series f = d^p (1 + c d^2) of the solution that vanishes
// (or stays regular) at an inverse-square pole, d the distance to the pole.
struct Frobenius {
    double exponent;
    double c;

    Frobenius(Mode mode, PoleCoefficients pole, SpectralPoint p) {
        const double z2 = p.zeta * p.zeta;
        const double k2 = p.k * p.k;
        const double nu = std::sqrt(z2 * pole.strength + 0.25);
        if (mode == Mode::TE) {
            exponent = nu + 0.5;
            c = (k2 + z2 * pole.offset) / (4.0 * exponent + 2.0);
        } else {
            exponent = nu - 0.5;
            c = (k2 + exponent * (exponent + 3.0) * pole.offset / pole.strength) /
                (4.0 * exponent + 6.0);
        }
    }

    double log_derivative(double d) const { return exponent / d + 2.0 * c * d / (1.0 + c * d * d); }

    // Start distance. A start error is damped by exp(-2 int q) on the way to
    // the nearest position and int q >= p ln(gap / d), so for large p the
    // start can move well away from the pole.
    double start_distance(double gap, double scale, const RiccatiOptions& opt) const {
        const double damped = exponent > 0.0 ? gap * std::exp(-opt.far_field_decay / exponent) : 0.0;
        return std::min(std::max(opt.pole_offset * scale, damped), 0.5 * gap);
    }
};

struct Start {
    double z;
    double value;
    double dir;
};

Start locate_start(const FrozenProfile& eps, Mode mode, SpectralPoint p, const Anchor& anchor,
                   double z_min, double z_max, const RiccatiOptions& opt) {
    const auto to_mode = [&](double y, double z) { return mode == Mode::TE ? y : y / eps(z); };
    switch (anchor.kind) {
        case Anchor::Kind::FarField: {
            if (eps.has_upper_pole()) {
                const Frobenius series(mode, eps.pole(), p);
                const double d = series.start_distance(eps.upper() - z_max, eps.pole_scale(), opt);
                const double z0 = eps.upper() - d;
                return {z0, to_mode(-series.log_derivative(d), z0), -1.0};
            }
            const double z0 = far_point(eps, p, z_max, +1.0, opt.far_field_decay);
            return {z0, to_mode(-decay_rate(eps, p, z0), z0), -1.0};
        }
        case Anchor::Kind::Singularity: {
            if (eps.has_lower_pole()) {
                const Frobenius series(mode, eps.pole(), p);
                const double d = series.start_distance(z_min - eps.lower(), eps.pole_scale(), opt);
                const double z0 = eps.lower() + d;
                return {z0, to_mode(series.log_derivative(d), z0), +1.0};
            }
            const double z0 = far_point(eps, p, z_min, -1.0, opt.far_field_decay);
            return {z0, to_mode(decay_rate(eps, p, z0), z0), +1.0};
        }
        case Anchor::Kind::Interface:
            if (!(anchor.z > eps.lower() && anchor.z < eps.upper()) || !std::isfinite(anchor.value))
                throw DomainError("interface anchor at z = " + fmt(anchor.z) +
                                  " is outside the analytic region or has a non-finite value");
            if (z_min < anchor.z)
                throw DomainError("interface anchor integrates toward larger z; position " +
                                  fmt(z_min) + " lies below z = " + fmt(anchor.z));
            return {anchor.z, anchor.value, +1.0};
    }
    return {};
}

// True when exp(-2 Z sqrt(k^2 + zeta^2 eps_min)) underflows, eps_min the
// smallest eps on [0, Z]. The built-in profiles are monotone in z.
bool beyond_decay_bound(const PermittivityProfile& profile, double Z, SpectralPoint p) {
    const double eps_min = std::min(profile.eval(0.0, p.zeta), profile.eval(Z, p.zeta));
    return 2.0 * Z * std::sqrt(p.k * p.k + p.zeta * p.zeta * eps_min) > 800.0;
}

}  // namespace

LogDerivState riccati_solve(const PermittivityProfile& profile, Mode mode, SpectralPoint point,
                            Anchor anchor, std::span<const double> positions,
                            const RiccatiOptions& options) {
    check_point(point);
    if (positions.empty()) throw DomainError("riccati_solve needs at least one position");
    const FrozenProfile eps = profile.at_frequency(point.zeta);
    for (double z : positions) {
        if (!(z > eps.lower() && z < eps.upper()))
            throw DomainError("position z = " + fmt(z) +
                              " is outside the analytic region; singular point at z = " +
                              fmt(profile.singularity()));
    }
    const auto [zmin_it, zmax_it] = std::minmax_element(positions.begin(), positions.end());
    const Start start = locate_start(eps, mode, point, anchor, *zmin_it, *zmax_it, options);

    std::vector<std::size_t> order(positions.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return start.dir > 0 ? positions[a] < positions[b] : positions[a] > positions[b];
    });

    const double k2 = point.k * point.k;
    const double z2 = point.zeta * point.zeta;
    const auto rhs = [&](double z, const detail::State2& s) -> detail::State2 {
        const double e = eps(z);
        if (mode == Mode::TE) return {k2 + z2 * e - s[0] * s[0], s[0]};
        return {k2 / e + z2 - e * s[0] * s[0], e * s[0]};
    };

    // Sign the anchored solution must keep: a change of sign is a node of f.
    const double expected_sign = anchor.kind == Anchor::Kind::FarField      ? -1.0
                                 : anchor.kind == Anchor::Kind::Singularity ? 1.0
                                                                            : 0.0;
    const double rtol = options.rel_tol;
    double x = start.z;
    detail::State2 y{start.value, 0.0};
    detail::State2 dydx = rhs(x, y);
    double h = start.dir * 0.01 / std::max(std::abs(dydx[1] / std::max(std::abs(y[0]), 1e-300)) +
                                               std::abs(dydx[0] / y[0]),
                                           1e-300);
    if (!std::isfinite(h) || h == 0.0) h = start.dir * 1e-6;
    bool accumulating = false;
    long steps = 0;

    std::vector<double> values(positions.size()), logs(positions.size());
    for (std::size_t idx : order) {
        const double target = positions[idx];
        while (x != target) {
            const double remaining = target - x;
            // Keep h times the Riccati stiffness 2|f'/f| of order one.
            const double h_cap = 0.5 / std::max(std::abs(dydx[1]), 1e-300);
            if (std::abs(h) > h_cap) h = std::copysign(h_cap, h);
            const bool last = std::abs(h) >= std::abs(remaining);
            const double h_try = last ? remaining : h;
            const auto step = detail::dopri5_step(rhs, x, y, dydx, h_try);

            const double w0 = rtol * std::max(std::abs(y[0]), std::abs(step.y[0])) + 1e-300;
            double err = std::abs(step.error[0]) / w0;
            if (accumulating) {
                const double w1 =
                    rtol * std::max({1.0, std::abs(y[1]), std::abs(step.y[1])});
                err = std::max(err, std::abs(step.error[1]) / w1);
            }
            if (!std::isfinite(err)) err = 1e10;

            const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            if (err <= 1.0) {
                x = last ? target : x + h_try;
                y = step.y;
                dydx = step.dydx;
                if (!std::isfinite(y[0]) || y[0] * expected_sign < 0.0 ||
                    (expected_sign != 0.0 && y[0] == 0.0))
                    throw IntegrityError("Riccati blow-up (node of the fundamental solution) at z = " +
                                         fmt(x) + " for (zeta, k) = (" + fmt(point.zeta) + ", " +
                                         fmt(point.k) + ")");
                if (!last) h = h_try * factor;
            } else {
                h = h_try * factor;
            }
            if (x != target && std::abs(h) < 1e-15 * std::max(1.0, std::abs(x)))
                throw IntegrityError("Riccati step size underflow at z = " + fmt(x));
            if (++steps > options.max_steps)
                throw IntegrityError("Riccati step budget exhausted at z = " + fmt(x));
        }
        if (!accumulating) {
            accumulating = true;
            y[1] = 0.0;
        }
        values[idx] = y[0];
        logs[idx] = y[1];
    }

    LogDerivState out;
    out.mode = mode;
    out.positions.assign(positions.begin(), positions.end());
    out.riccati = std::move(values);
    out.log_magnitude.resize(logs.size());
    for (std::size_t i = 0; i < logs.size(); ++i) out.log_magnitude[i] = logs[i] - logs[0];
    return out;
}

void check_wall_geometry(const PermittivityProfile& profile, double Z) {
    if (!(Z > 0.0) || !std::isfinite(Z))
        throw DomainError("atom position Z must be finite and positive, got " + fmt(Z));
    if (profile.upper() <= Z)
        throw DomainError("permittivity singular at z = " + fmt(profile.upper()) +
                          ", between the plate and the atom at Z = " + fmt(Z));
    if (profile.lower() >= 0.0)
        throw DomainError("permittivity singular at z = " + fmt(profile.lower()) +
                          ", at or above the plate");
}

double wall_integrand_from(Mode mode, SpectralPoint point, const LogDerivState& decaying,
                           const LogDerivState& background, double eps_at_Z) {
    const double f0 = decaying.riccati.front();
    const double fz = decaying.riccati.back();
    const double g0 = background.riccati.front();
    const double bracket = g0 - f0;  // beta / (F(0) G~(0))
    if (!(bracket > 0.0))
        throw IntegrityError("Wronskian sign violation: y_G(0) - y_F(0) = " + fmt(bracket));
    const double amplitude = std::exp(2.0 * decaying.growth());  // (F(Z)/F(0))^2
    if (mode == Mode::TE) return point.zeta * point.zeta * amplitude / bracket;
    if (f0 == 0.0) throw IntegrityError("TM log-derivative of F vanishes at the plate");
    const double kz = point.k / eps_at_Z;
    return g0 / (f0 * bracket) * amplitude * (fz * fz + kz * kz);
}

double wall_integrand(const PermittivityProfile& profile, Mode mode, double Z,
                      SpectralPoint point, const RiccatiOptions& options) {
    check_wall_geometry(profile, Z);
    check_point(point);
    if (beyond_decay_bound(profile, Z, point)) return 0.0;
    const double both[2] = {0.0, Z};
    const double plate[1] = {0.0};
    const auto F = riccati_solve(profile, mode, point, Anchor::far_field(), both, options);
    const auto G = riccati_solve(profile, mode, point, Anchor::singularity(), plate, options);
    const double eps_Z = mode == Mode::TM ? profile.eval(Z, point.zeta) : 1.0;
    return wall_integrand_from(mode, point, F, G, eps_Z);
}

double te_wall_integrand(const PermittivityProfile& profile, double Z, SpectralPoint point,
                         const RiccatiOptions& options) {
    return wall_integrand(profile, Mode::TE, Z, point, options);
}

double tm_wall_integrand(const PermittivityProfile& profile, double Z, SpectralPoint point,
                         const RiccatiOptions& options) {
    return wall_integrand(profile, Mode::TM, Z, point, options);
}

double halfspace_integrand(const PermittivityProfile& prof1, const PermittivityProfile& prof2,
                           Mode mode, double Z, SpectralPoint point,
                           const RiccatiOptions& options) {
    if (!(Z > 0.0) || !std::isfinite(Z))
        throw DomainError("atom position Z must be finite and positive, got " + fmt(Z));
    if (!prof1.contains(0.0))
        throw DomainError("medium 1 is not analytic up to the interface; singular point at z = " +
                          fmt(prof1.singularity()));
    if (prof2.upper() <= Z)
        throw DomainError("medium 2 singular at z = " + fmt(prof2.upper()) +
                          ", between the interface and the atom at Z = " + fmt(Z));
    if (prof2.lower() >= 0.0)
        throw DomainError("continuation of medium 2 singular at z = " + fmt(prof2.lower()) +
                          ", at or above the interface");

    check_point(point);
    if (beyond_decay_bound(prof2, Z, point)) return 0.0;
    const double both[2] = {0.0, Z};
    const double iface[1] = {0.0};
    const auto G1 = riccati_solve(prof1, mode, point, Anchor::singularity(), iface, options);
    const auto G2 = riccati_solve(prof2, mode, point, Anchor::singularity(), iface, options);
    const auto F2 = riccati_solve(prof2, mode, point, Anchor::far_field(), both, options);

    const double g1 = G1.riccati.front();
    const double g2 = G2.riccati.front();
    const double f2 = F2.riccati.front();
    const double d1 = g1 - f2;  // [F2, G1](0) / (F2 G1)
    const double d2 = g2 - f2;  // beta_2 / (F2 G2)
    if (!(d1 > 0.0) || !(d2 > 0.0))
        throw IntegrityError("Wronskian sign violation at the interface for (zeta, k) = (" +
                             fmt(point.zeta) + ", " + fmt(point.k) + ")");
    const double ratio = (g1 - g2) / (d1 * d2) * std::exp(2.0 * F2.growth());
    if (mode == Mode::TE) return point.zeta * point.zeta * ratio;
    const double fz = F2.riccati.back();
    const double kz = point.k / prof2.eval(Z, point.zeta);
    return ratio * (fz * fz + kz * kz);
}

double halfspace_te_integrand(const PermittivityProfile& prof1, const PermittivityProfile& prof2,
                              double Z, SpectralPoint point, const RiccatiOptions& options) {
    return halfspace_integrand(prof1, prof2, Mode::TE, Z, point, options);
}

double halfspace_tm_integrand(const PermittivityProfile& prof1, const PermittivityProfile& prof2,
                              double Z, SpectralPoint point, const RiccatiOptions& options) {
    return halfspace_integrand(prof1, prof2, Mode::TM, Z, point, options);
}

double wronskian_residual(const PermittivityProfile& profile, Mode mode, SpectralPoint point,
                          std::span<const double> z_probes, const RiccatiOptions& options) {
    const auto F = riccati_solve(profile, mode, point, Anchor::far_field(), z_probes, options);
    const auto G = riccati_solve(profile, mode, point, Anchor::singularity(), z_probes, options);
    const double ref = G.riccati[0] - F.riccati[0];
    double worst = 0.0;
    for (std::size_t i = 1; i < z_probes.size(); ++i) {
        const double scale = std::exp(F.log_magnitude[i] + G.log_magnitude[i]);
        const double r = scale * (G.riccati[i] - F.riccati[i]) / ref;
        worst = std::max(worst, std::abs(r - 1.0));
    }
    return worst;
}

}  // namespace cpmedium
