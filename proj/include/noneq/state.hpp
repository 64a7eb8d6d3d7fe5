#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "noneq/errors.hpp"

namespace noneq {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Instantaneous state of a simple closed thermodynamic system.
///
/// q/p are the mechanical coordinates and conjugate momenta (dimension n,
/// possibly zero), S the single entropy variable. N and W hold mole numbers
/// and thermodynamic displacements for systems with internal matter transfer
/// or reactions (dimension K, empty otherwise). nu_ext holds the reaction
/// extent displacements (one per reaction, d/dt nu^a = -A^a).
struct ThermoPhaseState {
    double t = 0.0;
    Vector q;
    Vector p;
    double S = 0.0;
    Vector N;
    Vector W;
    Vector nu_ext;

    int n() const { return static_cast<int>(q.size()); }
    int K() const { return static_cast<int>(N.size()); }
};

/// Time derivative of a ThermoPhaseState, as produced by the field
/// assemblies. Segments that a system class does not evolve stay empty.
struct StateRates {
    Vector qdot;
    Vector pdot;
    double Sdot = 0.0;
    Vector Ndot;
    Vector Wdot;
    Vector nudot;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw DimensionMismatch(msg);
}

/// Structural invariants: matching q/p and N/W dimensions, finite entropy.
inline void validate_structure(const ThermoPhaseState& s) {
    require(s.q.size() == s.p.size(), "dim(q) != dim(p)");
    require(s.N.size() == s.W.size(), "dim(N) != dim(W)");
    if (!std::isfinite(s.S)) throw DomainError("entropy is not finite");
}

/// Soft domain boundary for models whose energy contains log(N_k):
/// integration aborts here instead of clamping, so conservation checks
/// stay meaningful.
inline void require_positive_moles(const ThermoPhaseState& s) {
    for (int k = 0; k < s.K(); ++k) {
        if (!(s.N[k] > 0.0))
            throw DomainError("mole number N_" + std::to_string(k + 1) +
                              " left the positive domain (N = " +
                              std::to_string(s.N[k]) + ")");
    }
}

} // namespace noneq
