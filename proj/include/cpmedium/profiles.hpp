#pragma once

#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cpmedium {

enum class ProfileKind { Vacuum, Constant, InverseSquare, Scaled };

/// Orientation of an inverse-square profile: Minus gives lambda/(a - z)^2
/// (pole at z = a, medium lives on z < a), Plus gives lambda/(a + z)^2 (pole at
/// z = -a, medium lives on z > -a).
enum class Orientation { Minus, Plus };

/// m(zeta^2) = P(zeta^2) / Q(zeta^2), coefficients in ascending powers of zeta^2.
struct RationalMultiplier {
    std::vector<double> numerator{1.0};
    std::vector<double> denominator{1.0};

    double operator()(double zeta) const;
};

/// Near a finite singular point the built-in families are exactly
/// eps(z) = strength / d^2 + offset, d the distance to the pole.
struct PoleCoefficients {
    double strength = 0.0;
    double offset = 0.0;
};

/// Permittivity at one fixed imaginary frequency. Cheap to copy and evaluate;
/// this is what the Riccati right-hand sides call in their inner loop.
class FrozenProfile {
public:
    /// No domain check: callers stay inside (lower(), upper()).
    double operator()(double z) const {
        const double base = base_value(z);
        return scaled_ ? 1.0 + multiplier_ * (base - 1.0) : base;
    }

    double lower() const { return lower_; }
    double upper() const { return upper_; }
    bool has_lower_pole() const { return lower_ > -std::numeric_limits<double>::infinity(); }
    bool has_upper_pole() const { return upper_ < std::numeric_limits<double>::infinity(); }
    PoleCoefficients pole() const;
    /// Length scale of the pole (the parameter a); 1 for pole-free profiles.
    double pole_scale() const { return kind_ == ProfileKind::InverseSquare ? a_ : 1.0; }

private:
    friend class PermittivityProfile;

    double base_value(double z) const {
        if (kind_ != ProfileKind::InverseSquare) return eps0_;
        const double d = orientation_ == Orientation::Minus ? a_ - z : a_ + z;
        return lambda_ / (d * d);
    }

    ProfileKind kind_ = ProfileKind::Constant;  // Vacuum is stored as Constant 1
    Orientation orientation_ = Orientation::Minus;
    double eps0_ = 1.0;
    double lambda_ = 0.0;
    double a_ = 0.0;
    bool scaled_ = false;
    double multiplier_ = 1.0;
    double lower_ = -std::numeric_limits<double>::infinity();
    double upper_ = std::numeric_limits<double>::infinity();
};

/// Background permittivity eps(z, i zeta) on the imaginary frequency axis.
/// Immutable value type. The same formula is used on both sides of z = 0, so
/// the analytic continuation needed for background subtraction is implicit.
class PermittivityProfile {
public:
    static PermittivityProfile vacuum();
    static PermittivityProfile constant(double eps0);
    static PermittivityProfile inverse_square(double lambda, double a, Orientation orientation);
    /// eps = 1 + m(zeta^2) (eps_inner - 1). m must be positive where evaluated.
    static PermittivityProfile scaled(const PermittivityProfile& inner, RationalMultiplier m);

    /// Parses `vacuum`, `constant:EPS` or `invsq:LAMBDA,A,SIGN` (SIGN is
    /// `minus` or `plus`). Throws DomainError on malformed input.
    static PermittivityProfile parse(std::string_view spec);

    /// Inverse of parse() for the three grammar kinds; Scaled renders as
    /// `scaled(<inner>)`.
    std::string to_string() const;

    ProfileKind kind() const { return kind_; }
    double eps0() const { return eps0_; }
    double lambda() const { return lambda_; }
    double a() const { return a_; }
    Orientation orientation() const { return orientation_; }

    /// eps(z, i zeta). Throws DomainError at or beyond a singular point.
    double eval(double z, double zeta) const;

    /// Nearest real-axis singularity of the continued profile; -inf when the
    /// profile is entire.
    double singularity() const;

    /// Open interval of analyticity (lower, upper).
    double lower() const;
    double upper() const;
    bool contains(double z) const { return z > lower() && z < upper(); }

    FrozenProfile at_frequency(double zeta) const;

private:
    ProfileKind kind_ = ProfileKind::Vacuum;
    double eps0_ = 1.0;
    double lambda_ = 0.0;
    double a_ = 0.0;
    Orientation orientation_ = Orientation::Minus;
    std::shared_ptr<const PermittivityProfile> inner_;
    std::shared_ptr<const RationalMultiplier> multiplier_;
};

inline double eval_permittivity(const PermittivityProfile& p, double z, double zeta) {
    return p.eval(z, zeta);
}

inline double singularity_of(const PermittivityProfile& p) { return p.singularity(); }

}  // namespace cpmedium
