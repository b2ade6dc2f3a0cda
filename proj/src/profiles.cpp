#include "cpmedium/profiles.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "cpmedium/errors.hpp"

namespace cpmedium {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double polynomial(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double parse_number(std::string_view text, std::string_view what) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value))
        throw DomainError("profile spec: cannot parse " + std::string(what) + " from '" +
                          std::string(text) + "'");
    return value;
}

std::string format_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string point_text(double z) {
    std::ostringstream os;
    os.precision(17);
    os << z;
    return os.str();
}

}  // namespace

double RationalMultiplier::operator()(double zeta) const {
    const double x = zeta * zeta;
    return polynomial(numerator, x) / polynomial(denominator, x);
}

PoleCoefficients FrozenProfile::pole() const {
    if (kind_ != ProfileKind::InverseSquare) return {};
    if (!scaled_) return {lambda_, 0.0};
    return {multiplier_ * lambda_, 1.0 - multiplier_};
}

PermittivityProfile PermittivityProfile::vacuum() { return PermittivityProfile{}; }

PermittivityProfile PermittivityProfile::constant(double eps0) {
    if (!(eps0 > 0.0) || !std::isfinite(eps0))
        throw DomainError("constant permittivity must be finite and positive, got " +
                          point_text(eps0));
    PermittivityProfile p;
    p.kind_ = ProfileKind::Constant;
    p.eps0_ = eps0;
    return p;
}

PermittivityProfile PermittivityProfile::inverse_square(double lambda, double a,
                                                        Orientation orientation) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw DomainError("inverse-square lambda must be finite and positive");
    if (!(a > 0.0) || !std::isfinite(a))
        throw DomainError("inverse-square a must be finite and positive");
    PermittivityProfile p;
    p.kind_ = ProfileKind::InverseSquare;
    p.lambda_ = lambda;
    p.a_ = a;
    p.orientation_ = orientation;
    return p;
}

PermittivityProfile PermittivityProfile::scaled(const PermittivityProfile& inner,
                                                RationalMultiplier m) {
    if (m.numerator.empty() || m.denominator.empty())
        throw DomainError("rational multiplier needs non-empty coefficient lists");
    PermittivityProfile p;
    p.kind_ = ProfileKind::Scaled;
    p.inner_ = std::make_shared<const PermittivityProfile>(inner);
    p.multiplier_ = std::make_shared<const RationalMultiplier>(std::move(m));
    return p;
}

PermittivityProfile PermittivityProfile::parse(std::string_view spec) {
    const auto colon = spec.find(':');
    const std::string_view head = spec.substr(0, colon);
    const std::string_view body = colon == std::string_view::npos ? std::string_view{}
                                                                   : spec.substr(colon + 1);
    if (head == "vacuum" && colon == std::string_view::npos) return vacuum();
    if (head == "constant" && colon != std::string_view::npos)
        return constant(parse_number(body, "EPS"));
    if (head == "invsq" && colon != std::string_view::npos) {
        const auto c1 = body.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : body.find(',', c1 + 1);
        if (c2 == std::string_view::npos || body.find(',', c2 + 1) != std::string_view::npos)
            throw DomainError("profile spec: expected invsq:LAMBDA,A,SIGN, got '" +
                              std::string(spec) + "'");
        const double lambda = parse_number(body.substr(0, c1), "LAMBDA");
        const double a = parse_number(body.substr(c1 + 1, c2 - c1 - 1), "A");
        const std::string_view sign = body.substr(c2 + 1);
        if (sign == "minus") return inverse_square(lambda, a, Orientation::Minus);
        if (sign == "plus") return inverse_square(lambda, a, Orientation::Plus);
        throw DomainError("profile spec: SIGN must be 'minus' or 'plus', got '" +
                          std::string(sign) + "'");
    }
    throw DomainError("unknown profile spec '" + std::string(spec) +
                      "' (expected vacuum, constant:EPS or invsq:LAMBDA,A,SIGN)");
}

std::string PermittivityProfile::to_string() const {
    switch (kind_) {
        case ProfileKind::Vacuum: return "vacuum";
        case ProfileKind::Constant: return "constant:" + format_number(eps0_);
        case ProfileKind::InverseSquare:
            return "invsq:" + format_number(lambda_) + "," + format_number(a_) + "," +
                   (orientation_ == Orientation::Minus ? "minus" : "plus");
        case ProfileKind::Scaled: return "scaled(" + inner_->to_string() + ")";
    }
    return {};
}

double PermittivityProfile::lower() const {
    switch (kind_) {
        case ProfileKind::InverseSquare: return orientation_ == Orientation::Plus ? -a_ : -kInf;
        case ProfileKind::Scaled: return inner_->lower();
        default: return -kInf;
    }
}

double PermittivityProfile::upper() const {
    switch (kind_) {
        case ProfileKind::InverseSquare: return orientation_ == Orientation::Minus ? a_ : kInf;
        case ProfileKind::Scaled: return inner_->upper();
        default: return kInf;
    }
}

double PermittivityProfile::singularity() const {
    if (upper() < kInf) return upper();
    return lower();
}

double PermittivityProfile::eval(double z, double zeta) const {
    if (!std::isfinite(z) || !std::isfinite(zeta))
        throw DomainError("permittivity evaluated at non-finite argument");
    if (!contains(z))
        throw DomainError("permittivity is singular at z = " + point_text(singularity()) +
                          "; evaluation at z = " + point_text(z) +
                          " lies at or beyond the singular point");
    const double eps = at_frequency(zeta)(z);
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw DomainError("permittivity is not positive at z = " + point_text(z) +
                          ", zeta = " + point_text(zeta));
    return eps;
}

FrozenProfile PermittivityProfile::at_frequency(double zeta) const {
    FrozenProfile f;
    switch (kind_) {
        case ProfileKind::Vacuum:
            f.kind_ = ProfileKind::Constant;
            f.eps0_ = 1.0;
            break;
        case ProfileKind::Constant:
            f.kind_ = ProfileKind::Constant;
            f.eps0_ = eps0_;
            break;
        case ProfileKind::InverseSquare:
            f.kind_ = ProfileKind::InverseSquare;
            f.lambda_ = lambda_;
            f.a_ = a_;
            f.orientation_ = orientation_;
            break;
        case ProfileKind::Scaled: {
            f = inner_->at_frequency(zeta);
            const double m = (*multiplier_)(zeta);
            if (!(m > 0.0) || !std::isfinite(m))
                throw DomainError("dispersion multiplier must be positive, got " +
                                  point_text(m) + " at zeta = " + point_text(zeta));
            // 1 + m1 (1 + m2 (b - 1) - 1) = 1 + m1 m2 (b - 1)
            f.multiplier_ = f.scaled_ ? f.multiplier_ * m : m;
            f.scaled_ = true;
            break;
        }
    }
    f.lower_ = lower();
    f.upper_ = upper();
    return f;
}

}  // namespace cpmedium
