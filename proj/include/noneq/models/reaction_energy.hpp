#pragma once

#include "noneq/force.hpp"

namespace noneq {

/// Internal energy U(N_1..N_R, S) of an isolated well-mixed reactor of
/// fixed volume: ideal mixture of R species with per-species heat
/// capacities cv_I and formation energies u0_I, one common temperature.
struct ReactionMixtureParams {
    Vector cv;     // per-species molar heat capacity (J/(mol K))
    Vector u0;     // per-species formation energy (J/mol)
    Vector s0;     // per-species reference molar entropy (J/(mol K))
    double v0 = 0.1;    // reference molar volume (m^3/mol)
    double volume = 1e-3; // fixed reactor volume (m^3)
    double T0 = 300.0;
    double R = 8.31446261815324;
};

inline void validate(const ReactionMixtureParams& P) {
    const auto R = P.cv.size();
    if (R == 0 || P.u0.size() != R || P.s0.size() != R)
        throw ConfigurationError("reaction mixture: cv/u0/s0 sizes differ");
    if (!(P.cv.minCoeff() > 0 && P.v0 > 0 && P.volume > 0 && P.T0 > 0))
        throw ConfigurationError("reaction mixture parameters must be positive");
}

namespace detail {

inline double reactor_log_term(const ReactionMixtureParams& P, const Vector& N) {
    double a = 0.0;
    for (int i = 0; i < N.size(); ++i)
        a += N[i] * std::log(P.volume / (N[i] * P.v0));
    return a;
}

inline double reactor_temperature(const ReactionMixtureParams& P,
                                  double S, const Vector& N) {
    const double C = P.cv.dot(N);
    const double A = S - P.s0.dot(N) - P.R * reactor_log_term(P, N);
    return P.T0 * std::exp(A / C);
}

} // namespace detail

inline double reaction_entropy_at_temperature(const ReactionMixtureParams& P,
                                              double T, const Vector& N) {
    return P.s0.dot(N) + P.cv.dot(N) * std::log(T / P.T0) +
           P.R * detail::reactor_log_term(P, N);
}

/// U = (sum_I N_I cv_I) T(S,N) + sum_I N_I u0_I; totally degenerate class,
/// no mechanical variables (n = 0).
inline HamiltonianModel reaction_mixture_energy(const ReactionMixtureParams& P) {
    validate(P);
    const int R = static_cast<int>(P.cv.size());
    HamiltonianModel model;
    model.kind = SystemKind::ReactionNetwork;
    model.n = 0;
    model.K = R;
    model.energy = [P](const ThermoPhaseState& s) {
        require_positive_moles(s);
        const double T = detail::reactor_temperature(P, s.S, s.N);
        return P.cv.dot(s.N) * T + P.u0.dot(s.N);
    };
    model.partials = [P, R](const ThermoPhaseState& s) {
        require_positive_moles(s);
        const double T = detail::reactor_temperature(P, s.S, s.N);
        const double logTT0 = std::log(T / P.T0);
        Partials d;
        d.dHdq = Vector::Zero(0);
        d.dHdp = Vector::Zero(0);
        d.dHdS = T;
        d.dHdN.resize(R);
        for (int i = 0; i < R; ++i) {
            const double logVi = std::log(P.volume / (s.N[i] * P.v0));
            d.dHdN[i] = P.u0[i] + P.cv[i] * T +
                        T * (P.R - P.s0[i] - P.R * logVi - P.cv[i] * logTT0);
        }
        return d;
    };
    return model;
}

/// Affine test energy U = u . N + c S (constant temperature c, constant mu).
inline HamiltonianModel linear_reaction_energy(const Vector& u, double c) {
    if (!(c > 0)) throw ConfigurationError("linear energy needs c > 0");
    const int R = static_cast<int>(u.size());
    HamiltonianModel model;
    model.kind = SystemKind::ReactionNetwork;
    model.n = 0;
    model.K = R;
    model.energy = [u, c](const ThermoPhaseState& s) {
        return u.dot(s.N) + c * s.S;
    };
    model.partials = [u, c](const ThermoPhaseState& s) {
        Partials d;
        d.dHdq = Vector::Zero(0);
        d.dHdp = Vector::Zero(0);
        d.dHdS = c;
        d.dHdN = u;
        (void)s;
        return d;
    };
    return model;
}

} // namespace noneq
