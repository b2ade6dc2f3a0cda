#pragma once

#include <stdexcept>
#include <string>

namespace cpmedium {

/// Input outside the mathematical domain of an operation (e.g. evaluation at
/// or beyond a permittivity singularity, Bessel order out of range).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A numerical invariant that cannot fail for exact arithmetic was violated:
/// Riccati pole crossing, Wronskian sign flip, NaN from an integrand.
class IntegrityError : public std::runtime_error {
public:
    explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cpmedium
