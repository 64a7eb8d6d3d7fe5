#pragma once

#include "noneq/force.hpp"

namespace noneq {

/// One piston of mass m closing an ideal-gas cylinder of section alpha.
/// The gas is a fixed N0 moles with constant molar heat capacity cv; V0,
/// T0, S0 fix the reference point of the entropy scale. r is the
/// phenomenological friction coefficient of the piston.
struct PistonParams {
    double m = 1.0;       // piston mass (kg)
    double alpha = 1e-2;  // cylinder section (m^2)
    double N0 = 0.02;     // moles of gas (mol)
    double cv = 12.471;   // molar heat capacity at constant volume (J/(mol K))
    double R = 8.31446261815324; // gas constant (J/(mol K))
    double T0 = 300.0;    // reference temperature (K)
    double V0 = 2e-3;     // reference volume (m^3)
    double S0 = 0.0;      // entropy at (T0, V0) (J/K)
    double r = 1.0;       // friction coefficient (kg/s)
};

inline void validate(const PistonParams& P) {
    if (!(P.m > 0 && P.alpha > 0 && P.N0 > 0 && P.cv > 0 && P.R > 0 &&
          P.T0 > 0 && P.V0 > 0) ||
        P.r < 0)
        throw ConfigurationError("piston parameters must be positive");
}

/// Constant-cv ideal gas: T(q,S) = T0 (V0/(alpha q))^(R/cv) exp((S-S0)/(N0 cv)).
inline double piston_temperature(const PistonParams& P, double q, double S) {
    if (!(q > 0.0)) throw DomainError("piston position q <= 0");
    return P.T0 * std::pow(P.V0 / (P.alpha * q), P.R / P.cv) *
           std::exp((S - P.S0) / (P.N0 * P.cv));
}

inline double piston_internal_energy(const PistonParams& P, double q, double S) {
    return P.N0 * P.cv * piston_temperature(P, q, S);
}

/// p V = N0 R T holds exactly for this closed form.
inline double piston_pressure(const PistonParams& P, double q, double S) {
    return P.N0 * P.R * piston_temperature(P, q, S) / (P.alpha * q);
}

/// H(q,p,S) = p^2/(2m) + U(q,S) with the closed form above.
inline HamiltonianModel piston_model(const PistonParams& P) {
    validate(P);
    HamiltonianModel model;
    model.kind = SystemKind::SimpleFriction;
    model.n = 1;
    model.K = 0;
    model.energy = [P](const ThermoPhaseState& s) {
        return 0.5 * s.p[0] * s.p[0] / P.m +
               piston_internal_energy(P, s.q[0], s.S);
    };
    model.partials = [P](const ThermoPhaseState& s) {
        const double T = piston_temperature(P, s.q[0], s.S);
        Partials d;
        // dU/dq = -alpha * pressure
        d.dHdq = Vector::Constant(1, -P.N0 * P.R * T / s.q[0]);
        d.dHdp = Vector::Constant(1, s.p[0] / P.m);
        d.dHdS = T;
        return d;
    };
    return model;
}

struct PistonSystem {
    HamiltonianModel model;
    ForceField force;
};

/// Model plus its friction/external forcing in one go.
inline PistonSystem piston_cylinder_model(
    const PistonParams& P,
    std::function<Vector(double, const ThermoPhaseState&)> external = {}) {
    PistonSystem sys{piston_model(P), {}};
    sys.force = constant_friction(Matrix::Constant(1, 1, P.r));
    sys.force.external = std::move(external);
    return sys;
}

/// Damped oscillator carrying a heat store: H = p^2/(2m) + k q^2/2 + C T0 exp((S-S0)/C).
/// With r = 0 the mechanical part is the textbook harmonic oscillator.
struct HarmonicParams {
    double m = 1.0;
    double k = 4.0;
    double C = 1.0;   // heat capacity (J/K)
    double T0 = 300.0;
    double S0 = 0.0;
    double r = 0.0;
};

inline HamiltonianModel harmonic_model(const HarmonicParams& P) {
    if (!(P.m > 0 && P.k > 0 && P.C > 0 && P.T0 > 0) || P.r < 0)
        throw ConfigurationError("harmonic parameters must be positive");
    HamiltonianModel model;
    model.kind = SystemKind::SimpleFriction;
    model.n = 1;
    model.K = 0;
    model.energy = [P](const ThermoPhaseState& s) {
        return 0.5 * s.p[0] * s.p[0] / P.m + 0.5 * P.k * s.q[0] * s.q[0] +
               P.C * P.T0 * std::exp((s.S - P.S0) / P.C);
    };
    model.partials = [P](const ThermoPhaseState& s) {
        Partials d;
        d.dHdq = Vector::Constant(1, P.k * s.q[0]);
        d.dHdp = Vector::Constant(1, s.p[0] / P.m);
        d.dHdS = P.T0 * std::exp((s.S - P.S0) / P.C);
        return d;
    };
    return model;
}

} // namespace noneq
