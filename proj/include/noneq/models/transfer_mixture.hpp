#pragma once

#include "noneq/force.hpp"

namespace noneq {

/// K rigid compartments of fixed volumes V_k holding one ideal-gas species
/// at a common temperature, plus an optional mechanical degree of freedom
/// (mass on a spring) whose friction heats the gas. The single entropy S
/// determines T through the constant-cv ideal-gas entropy closed form, so
/// all partials are exact.
struct TransferMixtureParams {
    double m = 1.0;        // mechanical mass (kg)
    double spring = 0.0;   // spring constant (N/m)
    Vector volumes;        // compartment volumes V_k (m^3)
    double cv = 12.471;    // molar heat capacity (J/(mol K))
    double s0 = 0.0;       // reference molar entropy (J/(mol K))
    double v0 = 0.1;       // reference molar volume (m^3/mol)
    double T0 = 300.0;     // reference temperature (K)
    double R = 8.31446261815324;
};

inline void validate(const TransferMixtureParams& P) {
    if (!(P.m > 0 && P.cv > 0 && P.v0 > 0 && P.T0 > 0 && P.R > 0) ||
        P.spring < 0 || P.volumes.size() == 0 || P.volumes.minCoeff() <= 0)
        throw ConfigurationError("transfer mixture parameters must be positive");
}

namespace detail {

/// log-sum entropy kernel: S = Ntot*s0 + Ntot*cv*ln(T/T0) + R*sum N_k ln(V_k/(N_k v0))
inline double mixture_log_term(const TransferMixtureParams& P, const Vector& N) {
    double a = 0.0;
    for (int k = 0; k < N.size(); ++k)
        a += N[k] * std::log(P.volumes[k] / (N[k] * P.v0));
    return a;
}

inline double mixture_temperature(const TransferMixtureParams& P,
                                  double S, const Vector& N) {
    const double Ntot = N.sum();
    const double C = P.cv * Ntot;
    const double A = S - P.s0 * Ntot - P.R * mixture_log_term(P, N);
    return P.T0 * std::exp(A / C);
}

} // namespace detail

/// Entropy value that puts the mixture at temperature T for composition N.
inline double transfer_entropy_at_temperature(const TransferMixtureParams& P,
                                              double T, const Vector& N) {
    const double Ntot = N.sum();
    return P.s0 * Ntot + P.cv * Ntot * std::log(T / P.T0) +
           P.R * detail::mixture_log_term(P, N);
}

/// H(q,p,S,N) = p^2/(2m) + spring q^2/2 + cv*(sum N_k)*T(S,N).
inline HamiltonianModel transfer_mixture_model(const TransferMixtureParams& P) {
    validate(P);
    const int K = static_cast<int>(P.volumes.size());
    HamiltonianModel model;
    model.kind = SystemKind::MassTransfer;
    model.n = 1;
    model.K = K;
    model.energy = [P](const ThermoPhaseState& s) {
        require_positive_moles(s);
        const double T = detail::mixture_temperature(P, s.S, s.N);
        return 0.5 * s.p[0] * s.p[0] / P.m +
               0.5 * P.spring * s.q[0] * s.q[0] + P.cv * s.N.sum() * T;
    };
    model.partials = [P, K](const ThermoPhaseState& s) {
        require_positive_moles(s);
        const double T = detail::mixture_temperature(P, s.S, s.N);
        const double logTT0 = std::log(T / P.T0);
        Partials d;
        d.dHdq = Vector::Constant(1, P.spring * s.q[0]);
        d.dHdp = Vector::Constant(1, s.p[0] / P.m);
        d.dHdS = T;
        d.dHdN.resize(K);
        for (int k = 0; k < K; ++k) {
            const double logVk = std::log(P.volumes[k] / (s.N[k] * P.v0));
            // mu_k = cv T + T (R - s0 - R ln(V_k/(N_k v0)) - cv ln(T/T0))
            d.dHdN[k] = P.cv * T +
                        T * (P.R - P.s0 - P.R * logVk - P.cv * logTT0);
        }
        return d;
    };
    return model;
}

} // namespace noneq
