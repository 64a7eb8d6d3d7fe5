#pragma once

#include <stdexcept>
#include <string>

namespace noneq {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// State dimensions do not match what a model or operation expects.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// State left the admissible domain of a model (q <= 0 in a volume,
/// N_k <= 0 where a log appears, ...). Integration aborts on this.
class DomainError : public Error {
public:
    using Error::Error;
};

/// dH/dS <= 0: the trajectory left the physical temperature branch.
class NonPositiveTemperature : public DomainError {
public:
    using DomainError::DomainError;
};

/// Symmetric part of a phenomenological coefficient matrix failed the
/// positive semi-definiteness check beyond the allowed slack.
class IndefiniteCoefficient : public Error {
public:
    using Error::Error;
};

/// The multiplier system A*lambda = b is rank deficient.
class SingularMultiplierSystem : public Error {
public:
    using Error::Error;
};

/// A monitored constraint residual grew past its tolerance.
class ConstraintDriftExceeded : public Error {
public:
    using Error::Error;
};

/// Primary constraints are not plain momentum coordinates, or the
/// constrained Hamiltonian depends on a constrained momentum.
class UnsupportedConstraintStructure : public Error {
public:
    using Error::Error;
};

/// The velocity could not be recovered from (q, p, S).
class LegendreInversionFailure : public Error {
public:
    using Error::Error;
};

/// Adaptive step control needed a step below dt_min.
class StepUnderflow : public Error {
public:
    using Error::Error;
};

/// Invalid construction parameters or scenario configuration.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

} // namespace noneq
