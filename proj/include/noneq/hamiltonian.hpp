#pragma once

#include <functional>
#include <string>
#include <utility>

#include "noneq/state.hpp"

namespace noneq {

enum class SystemKind {
    SimpleFriction,
    MassTransfer,
    ReactionNetwork,
    LinearNonholonomic,
};

inline std::string to_string(SystemKind k) {
    switch (k) {
        case SystemKind::SimpleFriction: return "friction";
        case SystemKind::MassTransfer: return "transfer";
        case SystemKind::ReactionNetwork: return "reaction";
        case SystemKind::LinearNonholonomic: return "nonholonomic";
    }
    return "?";
}

/// Exact partial derivatives of H at a state.
struct Partials {
    Vector dHdq;
    Vector dHdp;
    double dHdS = 0.0;
    Vector dHdN;
};

/// A total-energy function H(q, p, S, N) together with its exact partials.
///
/// Built-in factories cover the four system classes; user models satisfying
/// the same evaluation contract plug in through the two callbacks. Models
/// are immutable after construction and safe to share across threads.
struct HamiltonianModel {
    SystemKind kind = SystemKind::SimpleFriction;
    int n = 0; ///< mechanical dimension
    int K = 0; ///< number of compartments / species
    std::function<double(const ThermoPhaseState&)> energy;
    std::function<Partials(const ThermoPhaseState&)> partials;

    void check_dimensions(const ThermoPhaseState& s) const {
        if (s.n() != n)
            throw DimensionMismatch("state has n=" + std::to_string(s.n()) +
                                    ", model expects n=" + std::to_string(n));
        if (s.K() != K)
            throw DimensionMismatch("state has K=" + std::to_string(s.K()) +
                                    ", model expects K=" + std::to_string(K));
        validate_structure(s);
    }
};

/// Total energy H(state).
inline double eval_hamiltonian(const HamiltonianModel& model,
                               const ThermoPhaseState& state) {
    model.check_dimensions(state);
    return model.energy(state);
}

/// All partial derivatives of H at the state.
inline Partials eval_partials(const HamiltonianModel& model,
                              const ThermoPhaseState& state) {
    model.check_dimensions(state);
    return model.partials(state);
}

/// T := dH/dS, restricted to the physical branch T > 0.
inline double temperature(const HamiltonianModel& model,
                          const ThermoPhaseState& state) {
    const double T = eval_partials(model, state).dHdS;
    if (!(T > 0.0))
        throw NonPositiveTemperature(
            "dH/dS = " + std::to_string(T) +
            " <= 0: state left the physical temperature branch");
    return T;
}

} // namespace noneq
