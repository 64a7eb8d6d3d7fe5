#pragma once

#include "noneq/constraints.hpp"
#include "noneq/dynamics/flow.hpp"
#include "noneq/dynamics/reaction_network.hpp"
#include "noneq/dynamics/transfer_network.hpp"

namespace noneq {

/// Evolution of a simple closed system with friction:
///   qdot = dH/dp
///   pdot = -dH/dq + F_ext + F_fr
///   Sdot = -<F_fr, qdot> / T
/// The entropy rate comes from eliminating the codimension-one constraint
/// multiplier in closed form, which only needs T = dH/dS > 0.
inline StateRates simple_friction_field(const HamiltonianModel& model,
                                        const ForceField& force,
                                        const ThermoPhaseState& state) {
    if (model.kind != SystemKind::SimpleFriction)
        throw ConfigurationError("simple_friction_field needs a friction-class model");
    const double T = temperature(model, state);
    const Partials d = eval_partials(model, state);
    const Vector Ffr = Vector(-(force.friction_at(state) * d.dHdp));
    StateRates r;
    r.qdot = d.dHdp;
    r.pdot = -d.dHdq + force.external_at(state.t, state) + Ffr;
    r.Sdot = -Ffr.dot(r.qdot) / T;
    return r;
}

/// Evolution of a system with internal matter transfer between K
/// compartments sharing one entropy:
///   qdot = dH/dp,  pdot = -dH/dq + F_ext + F_fr
///   Wdot_k = mu_k
///   Ndot_k = sum_l J^{l->k}
///   Sdot = -( <F_fr, qdot> + sum_{k<l} J^{l->k} (mu_k - mu_l) ) / T
inline StateRates transfer_field(const HamiltonianModel& model,
                                 const ForceField& force,
                                 const TransferNetwork& network,
                                 const ThermoPhaseState& state) {
    if (model.kind != SystemKind::MassTransfer)
        throw ConfigurationError("transfer_field needs a transfer-class model");
    if (network.compartments() != model.K)
        throw DimensionMismatch("network and model disagree on K");
    const double T = temperature(model, state);
    const Partials d = eval_partials(model, state);
    const Vector& mu = d.dHdN;
    const auto fluxes = network.fluxes(state, mu);
    const Vector Ffr = Vector(-(force.friction_at(state) * d.dHdp));

    StateRates r;
    r.qdot = d.dHdp;
    r.pdot = -d.dHdq + force.external_at(state.t, state) + Ffr;
    r.Wdot = mu;
    r.Ndot = network.mole_rates(fluxes);
    double pairing = 0.0; // sum_{k<l} J^{l->k} (mu_k - mu_l)
    for (std::size_t i = 0; i < fluxes.pairs.size(); ++i) {
        const auto [k, l] = fluxes.pairs[i];
        pairing += -fluxes.values[static_cast<int>(i)] * (mu[k] - mu[l]);
    }
    r.Sdot = -(Ffr.dot(r.qdot) + pairing) / T;
    return r;
}

/// Reduced evolution of an isolated reacting mixture:
///   Ndot_I = sum_a J_a nu^a_I,  Wdot_I = mu_I,  Sdot = (sum_a J_a A^a)/T,
/// plus the extent displacements nudot^a = -A^a.
inline StateRates reaction_field(const ReactionNetwork& network,
                                 const HamiltonianModel& energy,
                                 const ThermoPhaseState& state) {
    if (energy.kind != SystemKind::ReactionNetwork)
        throw ConfigurationError("reaction_field needs a reaction-class energy");
    if (network.species_count() != energy.K)
        throw DimensionMismatch("network and energy disagree on species count");
    const double T = temperature(energy, state);
    const Partials d = eval_partials(energy, state);
    const Vector& mu = d.dHdN;
    const Vector A = affinities(network, mu);
    const Vector J = reaction_rates(network, state, mu);

    StateRates r;
    r.qdot = Vector::Zero(0);
    r.pdot = Vector::Zero(0);
    r.Ndot = species_rates(network, J);
    r.Wdot = mu;
    r.Sdot = J.dot(A) / T;
    r.nudot = -A;
    return r;
}

/// Variational constraint of thermodynamic type for the friction class:
/// -T dS = <F_fr, dq>.
inline ThermoVariationalConstraint friction_constraint(
    const HamiltonianModel& model, const ForceField& force,
    const ThermoPhaseState& state) {
    ThermoVariationalConstraint c;
    c.dS_coeff = -temperature(model, state);
    c.dq_coeff = friction_covector(force, model, state);
    return c;
}

/// Transfer class: -T dS = <F_fr, dq> + sum_k (sum_l J^{l->k}) dW^k.
inline ThermoVariationalConstraint transfer_constraint(
    const HamiltonianModel& model, const ForceField& force,
    const TransferNetwork& network, const ThermoPhaseState& state) {
    ThermoVariationalConstraint c;
    c.dS_coeff = -temperature(model, state);
    c.dq_coeff = friction_covector(force, model, state);
    const Vector mu = eval_partials(model, state).dHdN;
    c.dW_coeff = network.mole_rates(network.fluxes(state, mu));
    return c;
}

/// Reaction class: -T dS = J_a nu^a_I dW^I.
inline ThermoVariationalConstraint reaction_constraint(
    const ReactionNetwork& network, const HamiltonianModel& energy,
    const ThermoPhaseState& state) {
    ThermoVariationalConstraint c;
    c.dS_coeff = -temperature(energy, state);
    const Vector mu = eval_partials(energy, state).dHdN;
    c.dW_coeff = species_rates(network, reaction_rates(network, state, mu));
    return c;
}

// ---------------------------------------------------------------------------
// Flows

class FrictionFlow final : public FlowSystem {
public:
    FrictionFlow(HamiltonianModel model, ForceField force)
        : model_(std::move(model)), force_(std::move(force)) {
        layout_.n = model_.n;
        layout_.K = 0;
        layout_.has_S = true;
    }

    const StateLayout& layout() const override { return layout_; }
    SystemKind kind() const override { return SystemKind::SimpleFriction; }

    Vector rhs(double t, const Vector& y) const override {
        const ThermoPhaseState s = layout_.unpack(t, y);
        return layout_.pack_rates(simple_friction_field(model_, force_, s));
    }

    DerivedQuantities derived(double t, const Vector& y) const override {
        const ThermoPhaseState s = layout_.unpack(t, y);
        DerivedQuantities d;
        d.H = eval_hamiltonian(model_, s);
        const Partials pd = eval_partials(model_, s);
        d.T = pd.dHdS;
        // sigma through the quadratic form <r v, v>/T, not the eliminated
        // multiplier, so diagnostics cross two routes
        const Vector v = pd.dHdp;
        d.sigma = v.dot(force_.friction_at(s) * v) / pd.dHdS;
        return d;
    }

    void spot_check(double t, const Vector& y) const override {
        force_.validate(layout_.unpack(t, y));
    }

    const HamiltonianModel& model() const { return model_; }
    const ForceField& force() const { return force_; }

private:
    HamiltonianModel model_;
    ForceField force_;
    StateLayout layout_;
};

class TransferFlow final : public FlowSystem {
public:
    TransferFlow(HamiltonianModel model, ForceField force, TransferNetwork network)
        : model_(std::move(model)),
          force_(std::move(force)),
          network_(std::move(network)) {
        layout_.n = model_.n;
        layout_.K = model_.K;
        layout_.has_S = true;
    }

    const StateLayout& layout() const override { return layout_; }
    SystemKind kind() const override { return SystemKind::MassTransfer; }

    Vector rhs(double t, const Vector& y) const override {
        const ThermoPhaseState s = layout_.unpack(t, y);
        return layout_.pack_rates(transfer_field(model_, force_, network_, s));
    }

    DerivedQuantities derived(double t, const Vector& y) const override {
        const ThermoPhaseState s = layout_.unpack(t, y);
        DerivedQuantities d;
        d.H = eval_hamiltonian(model_, s);
        const Partials pd = eval_partials(model_, s);
        d.T = pd.dHdS;
        d.mu = pd.dHdN;
        const auto fluxes = network_.fluxes(s, d.mu);
        d.fluxes = fluxes.values;
        const Vector v = pd.dHdp;
        d.sigma = v.dot(force_.friction_at(s) * v) / pd.dHdS +
                  network_.entropy_production(fluxes, d.mu, pd.dHdS);
        return d;
    }

    void spot_check(double t, const Vector& y) const override {
        const ThermoPhaseState s = layout_.unpack(t, y);
        force_.validate(s);
        network_.coefficients(s); // throws if any G < 0
    }

    const HamiltonianModel& model() const { return model_; }
    const ForceField& force() const { return force_; }
    const TransferNetwork& network() const { return network_; }

private:
    HamiltonianModel model_;
    ForceField force_;
    TransferNetwork network_;
    StateLayout layout_;
};

class ReactionFlow final : public FlowSystem {
public:
    ReactionFlow(ReactionNetwork network, HamiltonianModel energy)
        : network_(std::move(network)), energy_(std::move(energy)) {
        layout_.n = 0;
        layout_.K = energy_.K;
        layout_.R = network_.reaction_count();
        layout_.has_S = true;
    }

    const StateLayout& layout() const override { return layout_; }
    SystemKind kind() const override { return SystemKind::ReactionNetwork; }

    Vector rhs(double t, const Vector& y) const override {
        const ThermoPhaseState s = layout_.unpack(t, y);
        return layout_.pack_rates(reaction_field(network_, energy_, s));
    }

    DerivedQuantities derived(double t, const Vector& y) const override {
        const ThermoPhaseState s = layout_.unpack(t, y);
        DerivedQuantities d;
        d.H = eval_hamiltonian(energy_, s);
        const Partials pd = eval_partials(energy_, s);
        d.T = pd.dHdS;
        d.mu = pd.dHdN;
        d.affinities = affinities(network_, d.mu);
        d.rates = reaction_rates(network_, s, d.mu);
        d.sigma = d.rates.dot(d.affinities) / pd.dHdS;
        return d;
    }

    const ReactionNetwork& network() const { return network_; }
    const HamiltonianModel& energy() const { return energy_; }

private:
    ReactionNetwork network_;
    HamiltonianModel energy_;
    StateLayout layout_;
};

} // namespace noneq
