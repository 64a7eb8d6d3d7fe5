#pragma once

#include <random>

#include <noneq/noneq.hpp>

namespace testsup {

using namespace noneq;

inline PistonParams piston_defaults() { return PistonParams{}; }

inline HarmonicParams harmonic_defaults() {
    HarmonicParams P;
    P.m = 1.0;
    P.k = 4.0;
    P.C = 1.0;
    P.T0 = 300.0;
    P.S0 = 0.0;
    P.r = 0.5;
    return P;
}

inline TransferMixtureParams transfer_defaults() {
    TransferMixtureParams P;
    P.m = 1.0;
    P.spring = 4.0;
    P.volumes = Vector(2);
    P.volumes << 0.001, 0.002;
    return P;
}

inline ReactionMixtureParams reaction_defaults() {
    ReactionMixtureParams P;
    P.cv = Vector(2);
    P.cv << 12.471, 20.786;
    P.u0 = Vector(2);
    P.u0 << 500.0, 0.0;
    P.s0 = Vector::Zero(2);
    return P;
}

/// A <-> B with equal masses, linear rate law.
inline ReactionNetwork network_ab(double ell = 8e-7) {
    Eigen::MatrixXi fwd(1, 2), bwd(1, 2);
    fwd << 1, 0;
    bwd << 0, 1;
    Vector masses(2);
    masses << 0.018, 0.018;
    return ReactionNetwork(fwd, bwd, masses,
                           RateLaw::linear(Matrix::Constant(1, 1, ell)),
                           {"A", "B"});
}

/// 2A <-> B with m_B = 2 m_A.
inline ReactionNetwork network_2ab(double ell = 4e-7) {
    Eigen::MatrixXi fwd(1, 2), bwd(1, 2);
    fwd << 2, 0;
    bwd << 0, 1;
    Vector masses(2);
    masses << 0.01, 0.02;
    return ReactionNetwork(fwd, bwd, masses,
                           RateLaw::linear(Matrix::Constant(1, 1, ell)),
                           {"A", "B"});
}

// ---- random admissible states per model class ----

inline ThermoPhaseState random_piston_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ThermoPhaseState s;
    s.q = Vector::Constant(1, 0.05 + 0.4 * u(rng));
    s.p = Vector::Constant(1, -2.0 + 4.0 * u(rng));
    s.S = -0.1 + 0.3 * u(rng);
    return s;
}

inline ThermoPhaseState random_harmonic_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ThermoPhaseState s;
    s.q = Vector::Constant(1, -1.0 + 2.0 * u(rng));
    s.p = Vector::Constant(1, -2.0 + 4.0 * u(rng));
    s.S = -0.5 + 1.0 * u(rng);
    return s;
}

inline ThermoPhaseState random_transfer_state(const TransferMixtureParams& P,
                                              std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int K = static_cast<int>(P.volumes.size());
    ThermoPhaseState s;
    s.q = Vector::Constant(1, -0.5 + u(rng));
    s.p = Vector::Constant(1, -1.0 + 2.0 * u(rng));
    s.N = Vector(K);
    for (int k = 0; k < K; ++k) s.N[k] = 0.002 + 0.02 * u(rng);
    s.W = Vector::Zero(K);
    s.S = transfer_entropy_at_temperature(P, 250.0 + 100.0 * u(rng), s.N);
    return s;
}

inline ThermoPhaseState random_reaction_state(const ReactionMixtureParams& P,
                                              std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int R = static_cast<int>(P.cv.size());
    ThermoPhaseState s;
    s.N = Vector(R);
    for (int i = 0; i < R; ++i) s.N[i] = 0.002 + 0.03 * u(rng);
    s.W = Vector::Zero(R);
    s.S = reaction_entropy_at_temperature(P, 250.0 + 100.0 * u(rng), s.N);
    return s;
}

inline ThermoPhaseState random_mechanical_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ThermoPhaseState s;
    s.q = Vector(3);
    s.p = Vector(3);
    for (int i = 0; i < 3; ++i) {
        s.q[i] = u(rng);
        s.p[i] = u(rng);
    }
    return s;
}

} // namespace testsup
