#pragma once

#include "noneq/io/scenario.hpp"

namespace noneq {

/// Everything a scenario run needs: the assembled flow, the packed initial
/// state, and the context objects the diagnostics consume.
struct ScenarioRuntime {
    Scenario scenario;
    std::shared_ptr<FlowSystem> flow;
    std::optional<HamiltonianModel> model;
    ForceField force;
    std::optional<TransferNetwork> network;
    std::optional<ReactionNetwork> reactions;
    std::optional<MechanicalModel> mechanical;
    std::optional<LagrangianModel> lagrangian;
    std::function<double(const ThermoPhaseState&)> sigma_reference;
    std::function<ThermoVariationalConstraint(const ThermoPhaseState&)> constraint;
    Vector y0;
    bool isolated = false;
};

inline ScenarioRuntime build_runtime(const Scenario& sc) {
    ScenarioRuntime rt;
    rt.scenario = sc;
    rt.isolated = sc.external.none();

    ForceField force;
    if (sc.friction.size() > 0 && !sc.friction.isZero(0.0))
        force = constant_friction(sc.friction);
    force.external = sc.external.build();
    rt.force = force;

    switch (sc.kind) {
        case SystemKind::SimpleFriction: {
            if (sc.piston) {
                const PistonParams P = *sc.piston;
                rt.model = piston_model(P);
                rt.lagrangian = piston_lagrangian(P);
                rt.sigma_reference = [P](const ThermoPhaseState& s) {
                    return P.r * s.p[0] * s.p[0] /
                           (P.m * P.m * piston_temperature(P, s.q[0], s.S));
                };
            } else {
                const HarmonicParams P = *sc.harmonic;
                rt.model = harmonic_model(P);
                rt.lagrangian = harmonic_lagrangian(P);
                rt.sigma_reference = [P](const ThermoPhaseState& s) {
                    const double T = P.T0 * std::exp((s.S - P.S0) / P.C);
                    return P.r * s.p[0] * s.p[0] / (P.m * P.m * T);
                };
            }
            rt.flow = std::make_shared<FrictionFlow>(*rt.model, force);
            const HamiltonianModel model = *rt.model;
            rt.constraint = [model, force](const ThermoPhaseState& s) {
                return friction_constraint(model, force, s);
            };
            break;
        }
        case SystemKind::MassTransfer: {
            const TransferMixtureParams P = *sc.transfer_model;
            rt.model = transfer_mixture_model(P);
            rt.network = TransferNetwork::constant(sc.G);
            rt.flow = std::make_shared<TransferFlow>(*rt.model, force, *rt.network);
            const HamiltonianModel model = *rt.model;
            const TransferNetwork net = *rt.network;
            const Matrix G = sc.G;
            const Matrix r = sc.friction;
            rt.sigma_reference = [model, G, r](const ThermoPhaseState& s) {
                // quadratic forms straight from the coefficients:
                // <r v, v>/T + sum_{k<l} G^{kl} (mu_k - mu_l)^2 / T
                const Partials d = eval_partials(model, s);
                double out = r.size() ? d.dHdp.dot(r * d.dHdp) : 0.0;
                for (int k = 0; k < d.dHdN.size(); ++k)
                    for (int l = k + 1; l < d.dHdN.size(); ++l) {
                        const double dmu = d.dHdN[k] - d.dHdN[l];
                        out += G(k, l) * dmu * dmu;
                    }
                return out / d.dHdS;
            };
            rt.constraint = [model, force, net](const ThermoPhaseState& s) {
                return transfer_constraint(model, force, net, s);
            };
            break;
        }
        case SystemKind::ReactionNetwork: {
            if (sc.reaction_model)
                rt.model = reaction_mixture_energy(*sc.reaction_model);
            else
                rt.model = linear_reaction_energy(sc.linear_energy->first,
                                                  sc.linear_energy->second);
            RateLaw law = sc.rate_kind == RateLaw::Kind::Linear
                              ? RateLaw::linear(sc.L)
                              : RateLaw::mass_action(
                                    sc.k_fwd, sc.k_bwd,
                                    sc.reaction_model ? sc.reaction_model->volume
                                                      : 1.0);
            rt.reactions = ReactionNetwork(sc.nu_fwd, sc.nu_bwd, sc.masses,
                                           law, sc.species);
            rt.flow = std::make_shared<ReactionFlow>(*rt.reactions, *rt.model);
            const ReactionNetwork net = *rt.reactions;
            const HamiltonianModel energy = *rt.model;
            rt.constraint = [net, energy](const ThermoPhaseState& s) {
                return reaction_constraint(net, energy, s);
            };
            break;
        }
        case SystemKind::LinearNonholonomic: {
            rt.mechanical = knife_edge_model(*sc.knife);
            rt.model = rt.mechanical->hamiltonian();
            rt.flow = std::make_shared<NonholonomicFlow>(
                *rt.mechanical, knife_edge_constraint(), force, sc.drift_tol);
            break;
        }
    }

    // the initial state must be admissible before any run starts
    try {
        eval_hamiltonian(*rt.model, sc.initial);
        if (sc.kind != SystemKind::LinearNonholonomic)
            temperature(*rt.model, sc.initial);
    } catch (const DomainError& e) {
        throw ConfigurationError(std::string("initial state is inadmissible: ") +
                                 e.what());
    }
    rt.y0 = rt.flow->layout().pack(sc.initial);
    return rt;
}

/// Integrate a built runtime with its scenario settings.
inline IntegrationResult run_scenario(const ScenarioRuntime& rt) {
    return integrate(*rt.flow, rt.y0, rt.scenario.integrator);
}

/// Evaluate every enabled check on a recorded trajectory.
inline DiagnosticsReport run_checks(const ScenarioRuntime& rt,
                                    const Trajectory& traj,
                                    unsigned seed = 20260810u) {
    const Scenario& sc = rt.scenario;
    DiagnosticsReport report;
    report.scenario = sc.name;
    report.config_hash = config_hash(sc.raw);
    if (traj.empty()) return report;

    const double H0 = traj.front().derived.H.value_or(0.0);
    const double Hscale = std::max(std::abs(H0), 1e-30);

    std::optional<OracleComparison> oracle;
    auto oracle_result = [&]() -> const OracleComparison& {
        if (!oracle) {
            IntegratorConfig cfg = sc.integrator;
            if (cfg.record_grid <= 0) cfg.record_grid = 1000;
            oracle = lagrangian_oracle_compare(*rt.model, *rt.lagrangian,
                                               rt.force, sc.initial, cfg);
        }
        return *oracle;
    };

    std::optional<DiracConsistency> dirac;
    auto dirac_result = [&]() -> const DiracConsistency& {
        if (!dirac) {
            IntegratorConfig cfg = sc.integrator;
            if (cfg.record_grid <= 0) cfg.record_grid = 1000;
            dirac = dirac_consistency_check(*rt.reactions, *rt.model,
                                            sc.initial, cfg);
        }
        return *dirac;
    };

    for (const auto& [name, tol] : sc.checks) {
        double residual = 0.0;
        if (name == "first-law") {
            residual = first_law_residual(traj, *rt.model, rt.force) / Hscale;
        } else if (name == "second-law") {
            residual = second_law_residual(traj);
        } else if (name == "entropy-nondecreasing") {
            residual = entropy_monotonicity_residual(traj);
        } else if (name == "entropy-rate-formula") {
            residual =
                entropy_rate_formula_residual(traj, *rt.flow, rt.sigma_reference);
        } else if (name == "phenomenological-constraint") {
            residual =
                phenomenological_constraint_residual(traj, rt.constraint, *rt.flow);
        } else if (name == "mole-conservation") {
            residual = mole_conservation_residual(traj);
        } else if (name == "mass-conservation") {
            residual = mass_conservation_residual(traj, rt.reactions->masses());
        } else if (name == "energy-conservation") {
            residual = energy_drift_residual(traj) / Hscale;
        } else if (name == "equilibrium") {
            if (sc.kind == SystemKind::SimpleFriction)
                residual =
                    equilibrium_check_friction(traj, *rt.model, rt.force).residual;
            else if (sc.kind == SystemKind::MassTransfer)
                residual = equilibrium_check_transfer(traj, *rt.model).residual;
            else
                residual =
                    equilibrium_check_reaction(traj, *rt.reactions, *rt.model)
                        .residual;
        } else if (name == "lagrangian-oracle") {
            residual = oracle_result().max_state_deviation;
        } else if (name == "temperature-consistency") {
            residual = oracle_result().temperature_residual;
        } else if (name == "dirac-agreement") {
            residual = dirac_result().state_deviation;
        } else if (name == "dirac-primary") {
            residual = dirac_result().max_primary_residual;
        } else if (name == "dirac-multipliers") {
            residual = dirac_result().multiplier_deviation;
        } else if (name == "gradient-fd") {
            residual = gradient_consistency_residual(traj, *rt.model, 20, seed);
        } else if (name == "constraint-residual") {
            residual = constraint_residual_max(traj);
        }
        report.checks.push_back(CheckResult::of(name, residual, tol));
    }
    return report;
}

} // namespace noneq
