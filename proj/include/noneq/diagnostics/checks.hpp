#pragma once

#include <random>
#include <vector>

#include "noneq/diagnostics/fd.hpp"
#include "noneq/diagnostics/lagrangian.hpp"
#include "noneq/dynamics/dirac.hpp"
#include "noneq/integrate/integrator.hpp"

namespace noneq {

struct CheckResult {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;

    static CheckResult of(std::string name, double residual, double tol) {
        return CheckResult{std::move(name), residual, tol, residual <= tol};
    }
};

struct DiagnosticsReport {
    std::string scenario;
    std::string config_hash;
    std::vector<CheckResult> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace quadrature {

/// Integral over [a, b] of the quadratic through (t0,f0), (t1,f1), (t2,f2).
inline double quad3(double t0, double t1, double t2, double f0, double f1,
                    double f2, double a, double b) {
    auto basis = [a, b](double ti, double tj) {
        // integral of (x - ti)(x - tj) over [a, b]
        auto F = [ti, tj](double x) {
            return x * x * x / 3.0 - (ti + tj) * x * x / 2.0 + ti * tj * x;
        };
        return F(b) - F(a);
    };
    return f0 * basis(t1, t2) / ((t0 - t1) * (t0 - t2)) +
           f1 * basis(t0, t2) / ((t1 - t0) * (t1 - t2)) +
           f2 * basis(t0, t1) / ((t2 - t0) * (t2 - t1));
}

/// Cumulative Simpson-grade integral of samples (t_i, f_i): each interval
/// is integrated with the quadratic through its three nearest nodes, so
/// the running integral is available at every recorded time.
inline std::vector<double> cumulative(const std::vector<double>& t,
                                      const std::vector<double>& f) {
    const std::size_t n = t.size();
    std::vector<double> I(n, 0.0);
    if (n < 2) return I;
    if (n == 2) {
        I[1] = 0.5 * (f[0] + f[1]) * (t[1] - t[0]);
        return I;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t c = (i == 0) ? 1 : (i + 2 < n ? i + 1 : n - 2);
        I[i + 1] = I[i] + quad3(t[c - 1], t[c], t[c + 1], f[c - 1], f[c],
                                f[c + 1], t[i], t[i + 1]);
    }
    return I;
}

} // namespace quadrature

/// max_t |H(t) - H(0) - int_0^t <F_ext, qdot> dtau|, with the work integral
/// computed by Simpson-grade quadrature on the recorded samples. The
/// stride-halving estimate guards against undersampled quadrature: the
/// reported residual cannot be trusted below it, so the larger of the two
/// is returned.
inline double first_law_residual(const Trajectory& traj,
                                 const HamiltonianModel& model,
                                 const ForceField& force) {
    const std::size_t n = traj.size();
    if (n < 2) return 0.0;
    std::vector<double> t(n), work(n);
    std::vector<double> H(n);
    for (std::size_t i = 0; i < n; ++i) {
        const ThermoPhaseState s = traj.state(i);
        t[i] = s.t;
        const Vector qdot = eval_partials(model, s).dHdp;
        work[i] = force.external_at(s.t, s).dot(qdot);
        H[i] = traj[i].derived.H.value();
    }
    const auto I = quadrature::cumulative(t, work);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        residual = std::max(residual, std::abs(H[i] - H[0] - I[i]));

    // halving-stride self-check on the full work integral
    if (n >= 5) {
        std::vector<double> t2, w2;
        for (std::size_t i = 0; i < n; i += 2) {
            t2.push_back(t[i]);
            w2.push_back(work[i]);
        }
        if (t2.back() != t.back()) {
            t2.push_back(t.back());
            w2.push_back(work.back());
        }
        const auto I2 = quadrature::cumulative(t2, w2);
        residual = std::max(residual, std::abs(I2.back() - I.back()));
    }
    return residual;
}

/// Smallest entropy production rate over the trajectory, scaled by
/// max(1, sup |sigma|). Negative values beyond slack violate the second law.
inline double second_law_residual(const Trajectory& traj) {
    double min_sigma = 0.0, scale = 1.0;
    for (const auto& s : traj.samples) {
        if (!s.derived.sigma) continue;
        min_sigma = std::min(min_sigma, *s.derived.sigma);
        scale = std::max(scale, std::abs(*s.derived.sigma));
    }
    return std::max(0.0, -min_sigma) / scale;
}

/// Largest decrease of S between consecutive samples (isolated systems),
/// scaled by max(1, sup |S|).
inline double entropy_monotonicity_residual(const Trajectory& traj) {
    if (!traj.layout.has_S || traj.size() < 2) return 0.0;
    double worst = 0.0, scale = 1.0;
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
        const double s0 = traj[i].y[traj.layout.iS()];
        const double s1 = traj[i + 1].y[traj.layout.iS()];
        worst = std::max(worst, s0 - s1);
        scale = std::max({scale, std::abs(s0), std::abs(s1)});
    }
    return worst / scale;
}

/// max_t |sum_k N_k(t) - sum_k N_k(0)| (transfer systems).
inline double mole_conservation_residual(const Trajectory& traj) {
    if (traj.layout.K == 0 || traj.empty()) return 0.0;
    const auto total = [&](const Sample& s) {
        return s.y.segment(traj.layout.iN(), traj.layout.K).sum();
    };
    const double t0 = total(traj.front());
    double worst = 0.0;
    for (const auto& s : traj.samples)
        worst = std::max(worst, std::abs(total(s) - t0));
    return worst;
}

/// max_t |sum_I m_I N_I(t) - sum_I m_I N_I(0)| (reaction systems).
inline double mass_conservation_residual(const Trajectory& traj,
                                         const Vector& masses) {
    if (traj.layout.K == 0 || traj.empty()) return 0.0;
    const auto total = [&](const Sample& s) {
        return masses.dot(s.y.segment(traj.layout.iN(), traj.layout.K));
    };
    const double t0 = total(traj.front());
    double worst = 0.0;
    for (const auto& s : traj.samples)
        worst = std::max(worst, std::abs(total(s) - t0));
    return worst;
}

/// max_t |H(t) - H(0)| from the recorded energies (isolated systems).
inline double energy_drift_residual(const Trajectory& traj) {
    if (traj.empty()) return 0.0;
    const double H0 = traj.front().derived.H.value();
    double worst = 0.0;
    for (const auto& s : traj.samples)
        worst = std::max(worst, std::abs(s.derived.H.value() - H0));
    return worst;
}

/// Pointwise |Sdot_field - reference(state)|, scaled by max(1, sup |Sdot|).
/// The reference closure carries the closed-form entropy production rate
/// of the scenario (e.g. r p^2 / (m^2 T) for the piston).
inline double entropy_rate_formula_residual(
    const Trajectory& traj, const FlowSystem& flow,
    const std::function<double(const ThermoPhaseState&)>& reference) {
    if (!traj.layout.has_S) return 0.0;
    double worst = 0.0, scale = 1.0;
    for (const auto& s : traj.samples) {
        const double sdot = flow.rhs(s.t, s.y)[traj.layout.iS()];
        const double ref = reference(traj.layout.unpack(s.t, s.y));
        worst = std::max(worst, std::abs(sdot - ref));
        scale = std::max({scale, std::abs(sdot), std::abs(ref)});
    }
    return worst / scale;
}

/// Residual of the phenomenological constraint on the assembled rates:
/// -T Sdot must equal the dissipative pairings exactly, at every sample.
inline double phenomenological_constraint_residual(
    const Trajectory& traj,
    const std::function<ThermoVariationalConstraint(const ThermoPhaseState&)>&
        constraint,
    const FlowSystem& flow) {
    if (!traj.layout.has_S) return 0.0;
    double worst = 0.0, scale = 1.0;
    for (const auto& smp : traj.samples) {
        const ThermoPhaseState s = traj.layout.unpack(smp.t, smp.y);
        const Vector ydot = flow.rhs(smp.t, smp.y);
        StateRates r;
        const auto& L = traj.layout;
        r.qdot = ydot.segment(L.iq(), L.n);
        r.pdot = ydot.segment(L.ip(), L.n);
        r.Sdot = ydot[L.iS()];
        r.Ndot = ydot.segment(L.iN(), L.K);
        r.Wdot = ydot.segment(L.iW(), L.K);
        const auto c = constraint(s);
        worst = std::max(worst, std::abs(c.kinematic_residual(r)));
        scale = std::max(scale, std::abs(c.dS_coeff * r.Sdot));
    }
    return worst / scale;
}

/// Terminal equilibrium residual for the class of the trajectory:
/// friction: |p| and force balance; transfer: chemical potential spread;
/// reaction: affinity magnitude. Scaled as documented per class.
struct EquilibriumVerdict {
    double residual = 0.0;
    std::string detail;
};

inline EquilibriumVerdict equilibrium_check_friction(
    const Trajectory& traj, const HamiltonianModel& model,
    const ForceField& force) {
    const ThermoPhaseState s = traj.state(traj.size() - 1);
    double pscale = 1.0;
    for (const auto& smp : traj.samples)
        pscale = std::max(
            pscale,
            smp.y.segment(traj.layout.ip(), traj.layout.n).cwiseAbs().maxCoeff());
    const double pres =
        s.p.size() ? s.p.cwiseAbs().maxCoeff() / pscale : 0.0;

    const Partials d = eval_partials(model, s);
    const Vector balance = -d.dHdq + force.external_at(s.t, s) +
                           friction_covector(force, model, s);
    const double fscale =
        std::max(1.0, d.dHdq.size() ? d.dHdq.cwiseAbs().maxCoeff() : 1.0);
    EquilibriumVerdict v;
    v.residual = std::max(pres, balance.cwiseAbs().maxCoeff() / fscale);
    v.detail = "terminal momentum and force balance";
    return v;
}

inline EquilibriumVerdict equilibrium_check_transfer(
    const Trajectory& traj, const HamiltonianModel& model) {
    const ThermoPhaseState s = traj.state(traj.size() - 1);
    const Vector mu = eval_partials(model, s).dHdN;
    double spread = 0.0;
    for (int k = 0; k < mu.size(); ++k)
        for (int l = k + 1; l < mu.size(); ++l)
            spread = std::max(spread, std::abs(mu[k] - mu[l]));
    EquilibriumVerdict v;
    v.residual = spread / std::max(1.0, mu.cwiseAbs().maxCoeff());
    v.detail = "terminal chemical potential spread";
    return v;
}

inline EquilibriumVerdict equilibrium_check_reaction(
    const Trajectory& traj, const ReactionNetwork& net,
    const HamiltonianModel& energy) {
    const ThermoPhaseState last = traj.state(traj.size() - 1);
    const Vector A0 = traj.front().derived.affinities;
    const Vector A = affinities(net, eval_partials(energy, last).dHdN);
    EquilibriumVerdict v;
    v.residual = A.cwiseAbs().maxCoeff() /
                 std::max(1.0, A0.size() ? A0.cwiseAbs().maxCoeff() : 1.0);
    v.detail = "terminal affinities";
    return v;
}

/// Reduced vs unreduced Dirac dynamics on the same scenario.
struct DiracConsistency {
    double state_deviation = 0.0;     ///< shared components, scaled
    double max_primary_residual = 0.0; ///< max_t |phi_A| on the unreduced run
    double multiplier_deviation = 0.0; ///< lambda^{N_I} vs Ndot_I, scaled
    IntegrationStatus status = IntegrationStatus::Completed;
};

inline DiracConsistency dirac_consistency_check(
    const ReactionNetwork& network, const HamiltonianModel& energy,
    const ThermoPhaseState& initial, IntegratorConfig config) {
    if (config.record_grid <= 0)
        throw ConfigurationError("dirac check needs record_grid > 0");
    const TotalHamiltonian total = reaction_total_hamiltonian(energy);
    const DiracReduction red = dirac_reduce(total, network, energy, initial);

    const Vector y0r = red.reduced->layout().pack(initial);
    Vector y0u = Vector::Zero(red.unreduced->layout().size());
    y0u.head(y0r.size()) = y0r; // constrained momenta start on P: p_A = 0

    const auto rr = integrate(*red.reduced, y0r, config);
    const auto ru = integrate(*red.unreduced, y0u, config);

    DiracConsistency out;
    if (!rr.completed() || !ru.completed()) {
        out.status = rr.completed() ? ru.status : rr.status;
        out.state_deviation = std::numeric_limits<double>::infinity();
        return out;
    }

    const int shared = red.reduced->layout().size();
    Vector scale = Vector::Ones(shared);
    for (const auto& s : rr.trajectory.samples)
        scale = scale.cwiseMax(s.y.cwiseAbs());

    const int R = energy.K;
    double lscale = 1.0;
    for (std::size_t i = 0; i < rr.trajectory.size(); ++i) {
        const auto& yr = rr.trajectory[i].y;
        const auto& yu = ru.trajectory[i].y;
        const Vector dev =
            (yu.head(shared) - yr).cwiseAbs().cwiseQuotient(scale);
        out.state_deviation = std::max(out.state_deviation, dev.maxCoeff());
        out.max_primary_residual =
            std::max(out.max_primary_residual,
                     ru.trajectory[i].derived.constraint_residual.value());

        // multipliers extracted on the unreduced curve against the mole
        // rates of the separately integrated reduced curve
        const Vector lambda = red.multipliers(
            ru.trajectory.layout.unpack(ru.trajectory[i].t, yu));
        const Vector ndot =
            red.reduced->rhs(rr.trajectory[i].t, yr)
                .segment(rr.trajectory.layout.iN(), R);
        for (int k = 0; k < R; ++k) {
            out.multiplier_deviation =
                std::max(out.multiplier_deviation, std::abs(lambda[k] - ndot[k]));
            lscale = std::max({lscale, std::abs(lambda[k]), std::abs(ndot[k])});
        }
    }
    out.multiplier_deviation /= lscale;
    return out;
}

/// Largest finite-difference disagreement of the analytic partials over
/// states jittered around the trajectory (multiplicative noise, stays in
/// the admissible domain).
inline double gradient_consistency_residual(const Trajectory& traj,
                                            const HamiltonianModel& model,
                                            int samples, unsigned seed) {
    if (traj.empty()) return 0.0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    std::uniform_int_distribution<std::size_t> pick(0, traj.size() - 1);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        ThermoPhaseState s = traj.state(pick(rng));
        for (int j = 0; j < s.n(); ++j) {
            s.q[j] *= 1.0 + jitter(rng);
            s.p[j] += jitter(rng) * std::max(1.0, std::abs(s.p[j]));
        }
        s.S += jitter(rng) * std::max(1.0, std::abs(s.S));
        for (int k = 0; k < s.K(); ++k) s.N[k] *= 1.0 + jitter(rng);
        worst = std::max(worst, max_partial_deviation(model, s));
    }
    return worst;
}

/// Largest |omega(q) dH/dp| along a nonholonomic trajectory.
inline double constraint_residual_max(const Trajectory& traj) {
    double worst = 0.0;
    for (const auto& s : traj.samples)
        if (s.derived.constraint_residual)
            worst = std::max(worst, *s.derived.constraint_residual);
    return worst;
}

} // namespace noneq
