// Acceptance suite: runs every structural-law criterion on the built-in
// scenarios at pinned tolerances and prints one PASS/FAIL line each.

#include <chrono>
#include <cstdio>
#include <random>

#include <noneq/noneq.hpp>

using namespace noneq;

namespace {

int g_failures = 0;

void report(const std::string& name, double residual, double tol,
            const std::string& note = "") {
    const bool pass = residual <= tol;
    if (!pass) ++g_failures;
    std::printf("%-4s %-46s residual %.3e  tol %.1e%s%s\n",
                pass ? "PASS" : "FAIL", name.c_str(), residual, tol,
                note.empty() ? "" : "  ", note.c_str());
    std::fflush(stdout);
}

ScenarioRuntime builtin_runtime(const std::string& name) {
    return build_runtime(scenario_from_json(builtin_scenario_json(name)));
}

struct Run {
    ScenarioRuntime rt;
    IntegrationResult res;
};

Run run_builtin(const std::string& name) {
    Run r{builtin_runtime(name), {}};
    r.res = run_scenario(r.rt);
    if (!r.res.completed()) {
        std::printf("FAIL %s integration aborted: %s\n", name.c_str(),
                    r.res.abort_reason.c_str());
        ++g_failures;
    }
    return r;
}

double scaled(double x, double scale) { return x / std::max(1.0, scale); }

// --- criterion 1: first law on the closed piston, with a time budget ----
void criterion_first_law() {
    const auto rt = builtin_runtime("piston");
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = run_scenario(rt);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (!res.completed()) {
        report("first-law(piston)", 1.0, 0.0, res.abort_reason);
        return;
    }
    const double H0 = res.trajectory.front().derived.H.value();
    double drift = 0.0;
    for (const auto& s : res.trajectory.samples)
        drift = std::max(drift, std::abs(s.derived.H.value() - H0));
    report("1. first-law piston r=1 F_ext=0", drift / std::abs(H0), 1e-8);
    report("1. piston runtime (s)", seconds, 1.0);
}

// --- criterion 2: second law on every thermodynamic builtin --------------
void criterion_second_law() {
    const std::vector<std::string> isolated{"piston", "transfer-2c",
                                            "transfer-3c", "reaction-ab",
                                            "reaction-2a-b"};
    const std::vector<std::string> forced{"piston-forced"};
    for (const auto& name : isolated) {
        const Run r = run_builtin(name);
        if (!r.res.completed()) continue;
        report("2. second-law sigma>=0 " + name,
               second_law_residual(r.res.trajectory), 1e-10);
        report("2. entropy nondecreasing " + name,
               entropy_monotonicity_residual(r.res.trajectory), 1e-10);
    }
    for (const auto& name : forced) {
        const Run r = run_builtin(name);
        if (!r.res.completed()) continue;
        report("2. second-law sigma>=0 " + name,
               second_law_residual(r.res.trajectory), 1e-10);
    }
}

// --- criterion 3: closed-form entropy rate of the piston -----------------
void criterion_entropy_rate() {
    const Run r = run_builtin("piston");
    if (!r.res.completed()) return;
    report("3. piston Sdot = r p^2/(m^2 T)",
           entropy_rate_formula_residual(r.res.trajectory, *r.rt.flow,
                                         r.rt.sigma_reference),
           1e-10);
}

// --- criterion 4: Lagrangian and Hamiltonian sides agree ------------------
void criterion_lagrangian_oracle() {
    for (const auto& name : {"piston", "piston-forced"}) {
        const auto rt = builtin_runtime(name);
        IntegratorConfig cfg = rt.scenario.integrator; // rtol 1e-10
        const auto cmp = lagrangian_oracle_compare(
            *rt.model, *rt.lagrangian, rt.force, rt.scenario.initial, cfg);
        report(std::string("4. lagrangian oracle ") + name,
               cmp.max_state_deviation, 1e-7);
        report(std::string("4. temperature consistency ") + name,
               cmp.temperature_residual, 1e-9);
    }
}

// --- criterion 5: transfer conservation and relaxation --------------------
void criterion_transfer() {
    const Run r = run_builtin("transfer-2c");
    if (!r.res.completed()) return;
    report("5. transfer-2c mole conservation",
           mole_conservation_residual(r.res.trajectory), 1e-12);

    const ThermoPhaseState last = r.res.trajectory.state(r.res.trajectory.size() - 1);
    const Vector mu = eval_partials(*r.rt.model, last).dHdN;
    report("5. transfer-2c terminal |mu1-mu2|/|mu1|",
           std::abs(mu[0] - mu[1]) / std::abs(mu[0]), 1e-6);

    report("5. transfer-2c entropy term g(mu1-mu2)^2/T",
           entropy_rate_formula_residual(r.res.trajectory, *r.rt.flow,
                                         r.rt.sigma_reference),
           1e-10);
}

// --- criterion 6: reaction identities -------------------------------------
void criterion_reaction() {
    const Run r = run_builtin("reaction-2a-b");
    if (!r.res.completed()) return;
    report("6. reaction-2a-b mass conservation",
           mass_conservation_residual(r.res.trajectory, r.rt.reactions->masses()),
           1e-12);
    const double U0 = r.res.trajectory.front().derived.H.value();
    report("6. reaction-2a-b energy conservation",
           energy_drift_residual(r.res.trajectory) / std::abs(U0), 1e-9);
    report("6. reaction-2a-b terminal |A| (scaled)",
           equilibrium_check_reaction(r.res.trajectory, *r.rt.reactions,
                                      *r.rt.model)
               .residual,
           1e-6);
}

// --- criterion 7: Dirac reduction consistency ------------------------------
void criterion_dirac() {
    const auto rt = builtin_runtime("reaction-2a-b");
    IntegratorConfig cfg = rt.scenario.integrator;
    const auto dc = dirac_consistency_check(*rt.reactions, *rt.model,
                                            rt.scenario.initial, cfg);
    report("7. dirac reduced vs unreduced", dc.state_deviation, 1e-9);
    report("7. dirac primary constraints max|phi|", dc.max_primary_residual,
           1e-10);
    report("7. dirac multipliers vs mole rates", dc.multiplier_deviation, 1e-9);
}

// --- criterion 8: gradient suite -------------------------------------------
void criterion_gradients() {
    std::mt19937_64 rng(20260810);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    auto sample_friction = [&](double qlo, double qhi) {
        ThermoPhaseState s;
        s.q = Vector::Constant(1, qlo + (qhi - qlo) * u(rng));
        s.p = Vector::Constant(1, -2.0 + 4.0 * u(rng));
        s.S = -0.1 + 0.3 * u(rng);
        return s;
    };

    const auto piston_rt = builtin_runtime("piston");
    double worst = 0.0;
    for (int i = 0; i < 100; ++i)
        worst = std::max(worst, max_partial_deviation(*piston_rt.model,
                                                      sample_friction(0.05, 0.5)));
    report("8. gradients piston", worst, 1e-6);

    HarmonicParams hp;
    const auto harmonic = harmonic_model(hp);
    worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        ThermoPhaseState s;
        s.q = Vector::Constant(1, -1.0 + 2.0 * u(rng));
        s.p = Vector::Constant(1, -2.0 + 4.0 * u(rng));
        s.S = -0.5 + u(rng);
        worst = std::max(worst, max_partial_deviation(harmonic, s));
    }
    report("8. gradients harmonic", worst, 1e-6);

    const auto transfer_rt = builtin_runtime("transfer-2c");
    const auto& tp = *transfer_rt.scenario.transfer_model;
    worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        ThermoPhaseState s;
        s.q = Vector::Constant(1, -0.5 + u(rng));
        s.p = Vector::Constant(1, -1.0 + 2.0 * u(rng));
        s.N = Vector(2);
        s.N << 0.002 + 0.02 * u(rng), 0.002 + 0.02 * u(rng);
        s.W = Vector::Zero(2);
        s.S = transfer_entropy_at_temperature(tp, 250.0 + 100.0 * u(rng), s.N);
        worst = std::max(worst, max_partial_deviation(*transfer_rt.model, s));
    }
    report("8. gradients transfer mixture", worst, 1e-6);

    const auto reaction_rt = builtin_runtime("reaction-2a-b");
    const auto& rp = *reaction_rt.scenario.reaction_model;
    worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        ThermoPhaseState s;
        s.N = Vector(2);
        s.N << 0.002 + 0.03 * u(rng), 0.002 + 0.03 * u(rng);
        s.W = Vector::Zero(2);
        s.S = reaction_entropy_at_temperature(rp, 250.0 + 100.0 * u(rng), s.N);
        worst = std::max(worst, max_partial_deviation(*reaction_rt.model, s));
    }
    report("8. gradients reaction mixture", worst, 1e-6);

    const auto skate_rt = builtin_runtime("skate");
    worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        ThermoPhaseState s;
        s.q = Vector(3);
        s.p = Vector(3);
        for (int j = 0; j < 3; ++j) {
            s.q[j] = -1.0 + 2.0 * u(rng);
            s.p[j] = -1.0 + 2.0 * u(rng);
        }
        worst = std::max(worst, max_partial_deviation(*skate_rt.model, s));
    }
    report("8. gradients knife edge", worst, 1e-6);
}

// --- criterion 9: RK4 convergence order -------------------------------------
void criterion_convergence() {
    const auto rt = builtin_runtime("piston");
    auto end_state = [&](double dt) {
        IntegratorConfig cfg = rt.scenario.integrator;
        cfg.method = StepMethod::RK4Fixed;
        cfg.dt = dt;
        cfg.t_end = 1.0;
        cfg.record_grid = 1;
        const auto res = integrate(*rt.flow, rt.y0, cfg);
        return res.trajectory.back().y;
    };
    const Vector ref = end_state(1e-5);
    double prev_err = -1.0, min_order = 1e9;
    for (double dt : {4e-3, 2e-3, 1e-3, 5e-4}) {
        const double err = (end_state(dt) - ref).cwiseAbs().maxCoeff();
        if (prev_err > 0.0)
            min_order = std::min(min_order, std::log2(prev_err / err));
        prev_err = err;
    }
    // report as a residual: deficit below the required order
    report("9. RK4 observed order >= 3.7 (deficit)",
           std::max(0.0, 3.7 - min_order), 1e-12,
           "min order " + std::to_string(min_order));
}

// --- criterion 10: linear nonholonomic calibration ---------------------------
void criterion_skate() {
    const Run r = run_builtin("skate");
    if (!r.res.completed()) return;
    report("10. skate constraint residual",
           constraint_residual_max(r.res.trajectory), 1e-9);

    // independent fine-step reference: textbook blade-frame reduction
    // udot = g cos(phi), xdot = u cos(phi), ydot = u sin(phi), phi = w t
    const double g = r.rt.scenario.knife->g_eff;
    const double w = 1.0; // p_phi = I w with I = 1
    double u_ref = 0.0, x_ref = 0.0, y_ref = 0.0, t = 0.0;
    const double t_end = r.rt.scenario.integrator.t_end;
    const int steps = 400000;
    const double dt = t_end / steps;
    auto du = [&](double tt) { return g * std::cos(w * tt); };
    for (int i = 0; i < steps; ++i) {
        // RK4 on (u, x, y)
        const double k1u = du(t), k1x = u_ref * std::cos(w * t),
                     k1y = u_ref * std::sin(w * t);
        const double th = t + dt / 2;
        const double u2 = u_ref + dt / 2 * k1u;
        const double k2u = du(th), k2x = u2 * std::cos(w * th),
                     k2y = u2 * std::sin(w * th);
        const double u3 = u_ref + dt / 2 * k2u;
        const double k3u = du(th), k3x = u3 * std::cos(w * th),
                     k3y = u3 * std::sin(w * th);
        const double te = t + dt;
        const double u4 = u_ref + dt * k3u;
        const double k4u = du(te), k4x = u4 * std::cos(w * te),
                     k4y = u4 * std::sin(w * te);
        u_ref += dt / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
        x_ref += dt / 6 * (k1x + 2 * k2x + 2 * k3x + k4x);
        y_ref += dt / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
        t = te;
    }
    const auto& last = r.res.trajectory.back();
    const double dev = std::max(std::abs(last.y[0] - x_ref),
                                std::abs(last.y[1] - y_ref));
    report("10. skate vs fine-step reference", dev, 1e-6);
}

} // namespace

int main() {
    std::printf("acceptance: built-in scenarios, pinned tolerances\n");
    criterion_first_law();
    criterion_second_law();
    criterion_entropy_rate();
    criterion_lagrangian_oracle();
    criterion_transfer();
    criterion_reaction();
    criterion_dirac();
    criterion_gradients();
    criterion_convergence();
    criterion_skate();
    if (g_failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
