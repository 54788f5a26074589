#pragma once

#include <stdexcept>
#include <string>

namespace moutard {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid argument outside the mathematical domain (E >= 0, lambda = 0, z = 0, ...).
struct DomainError : Error {
    using Error::Error;
};

// Adaptive quadrature or extrapolation failed to reach the requested tolerance.
struct NonConvergence : Error {
    using Error::Error;
};

// Evaluation requested too close to a zero of the spectral denominator.
struct SingularPoint : Error {
    using Error::Error;
};

// Operation undefined on the unit circle |lambda| = 1 (discontinuous sign factor).
struct BoundaryError : Error {
    using Error::Error;
};

// Finite-difference stencil leaves the connected component / hits an exclusion band.
struct StencilError : Error {
    using Error::Error;
};

// Integration path crosses an excluded circle.
struct PathError : Error {
    using Error::Error;
};

// Invalid run or grid configuration.
struct ConfigError : Error {
    using Error::Error;
};

// Moutard seed fails its defining equations beyond tolerance.
struct SeedInvalid : Error {
    using Error::Error;
};

// |omega_{f,f*}| below threshold in a Moutard transform denominator.
struct DivisionByZeroOmega : Error {
    using Error::Error;
};

} // namespace moutard
