#include <catch2/catch_amalgamated.hpp>

#include "support/test_support.hpp"

using namespace noneq;
using Catch::Approx;

namespace {

/// Textbook reduction of the knife edge: u = speed along the blade,
/// phi = omega0 t. udot = g cos(phi), xdot = u cos(phi), ydot = u sin(phi).
/// Integrated with a plain fine-step RK4 written out here, independent of
/// the library integrator and of the multiplier solve.
struct KnifeReference {
    double g, omega0;

    std::array<double, 4> rhs(double t, const std::array<double, 4>& s) const {
        const double phi = omega0 * t;
        const double u = s[0];
        return {g * std::cos(phi), u * std::cos(phi), u * std::sin(phi), 0.0};
    }

    std::array<double, 4> run(double t_end, int steps) const {
        std::array<double, 4> s{0.0, 0.0, 0.0, 0.0}; // u, x, y, unused
        const double dt = t_end / steps;
        double t = 0.0;
        for (int i = 0; i < steps; ++i) {
            const auto k1 = rhs(t, s);
            auto add = [&](const std::array<double, 4>& a, double c,
                           const std::array<double, 4>& b) {
                std::array<double, 4> out;
                for (int j = 0; j < 4; ++j) out[j] = a[j] + c * b[j];
                return out;
            };
            const auto k2 = rhs(t + dt / 2, add(s, dt / 2, k1));
            const auto k3 = rhs(t + dt / 2, add(s, dt / 2, k2));
            const auto k4 = rhs(t + dt, add(s, dt, k3));
            for (int j = 0; j < 4; ++j)
                s[j] += dt / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
            t += dt;
        }
        return s;
    }
};

} // namespace

TEST_CASE("a compatible constraint leaves the free particle alone",
          "[nonholonomic]") {
    MechanicalModel mech;
    mech.Minv = Matrix::Identity(2, 2);

    LinearConstraintSet con;
    con.m = 1;
    con.n = 2;
    con.omega = [](const Vector&) {
        Matrix w(1, 2);
        w << 0.0, 1.0; // v_y = 0
        return w;
    };

    NonholonomicFlow flow(mech, con);
    Vector y0(4);
    y0 << 0.0, 0.0, 1.0, 0.0; // q = 0, p = (1, 0)
    IntegratorConfig cfg;
    cfg.method = StepMethod::RK4Fixed;
    cfg.dt = 1e-3;
    cfg.t_end = 2.0;
    cfg.record_grid = 20;
    const auto res = integrate(flow, y0, cfg);
    REQUIRE(res.completed());
    for (const auto& s : res.trajectory.samples) {
        CHECK(s.y[0] == Approx(s.t).margin(1e-12)); // x = t
        CHECK(std::abs(s.y[1]) <= 1e-15);
        CHECK(s.derived.multipliers.cwiseAbs().maxCoeff() <= 1e-15);
    }
}

TEST_CASE("knife edge matches its closed form and reference run",
          "[nonholonomic]") {
    KnifeEdgeParams P;
    P.m = 1.0;
    P.inertia = 1.0;
    P.g_eff = 2.0;
    const double omega0 = 1.0;

    NonholonomicFlow flow(knife_edge_model(P), knife_edge_constraint());
    Vector y0(6);
    y0 << 0, 0, 0, 0, 0, P.inertia * omega0;
    IntegratorConfig cfg;
    cfg.rtol = 1e-11;
    cfg.atol = 1e-13;
    cfg.t_end = 10.0;
    cfg.record_grid = 100;
    const auto res = integrate(flow, y0, cfg);
    REQUIRE(res.completed());

    const double g = P.g_eff;
    for (const auto& s : res.trajectory.samples) {
        const double t = s.t;
        // cycloid closed form for u0 = 0, phi0 = 0
        const double x = g / (4 * omega0 * omega0) * (1 - std::cos(2 * omega0 * t));
        const double y = g / (2 * omega0) * (t - std::sin(2 * omega0 * t) / (2 * omega0));
        CHECK(s.y[0] == Approx(x).margin(1e-8));
        CHECK(s.y[1] == Approx(y).margin(1e-8));
        CHECK(s.y[2] == Approx(omega0 * t).margin(1e-10));
        // multiplier lambda = 2 m g sin(omega t)
        CHECK(s.derived.multipliers[0] ==
              Approx(2 * P.m * g * std::sin(omega0 * t)).margin(1e-7));
        CHECK(*s.derived.constraint_residual <= 1e-9);
    }

    // independent fine-step reference of the reduced textbook equations
    const KnifeReference ref{g, omega0};
    const auto end = ref.run(10.0, 200000);
    const auto& last = res.trajectory.back();
    CHECK(last.y[0] == Approx(end[1]).margin(1e-6));
    CHECK(last.y[1] == Approx(end[2]).margin(1e-6));
    // and the blade-frame speed maps back through p
    const double u_end = last.y[3] * std::cos(last.y[2]) +
                         last.y[4] * std::sin(last.y[2]);
    CHECK(u_end == Approx(end[0]).margin(1e-6));
}

TEST_CASE("energy balance holds under the constraint force", "[nonholonomic]") {
    // the multiplier force does no work: H is conserved
    KnifeEdgeParams P;
    P.g_eff = 3.0;
    NonholonomicFlow flow(knife_edge_model(P), knife_edge_constraint());
    Vector y0(6);
    y0 << 0, 0, 0.3, 0.2, 0.0, 0.8;
    // project initial p onto the constraint: v_perp = 0
    const double phi = y0[2];
    const double vperp = -y0[3] * std::sin(phi) + y0[4] * std::cos(phi);
    y0[3] += vperp * std::sin(phi);
    y0[4] -= vperp * std::cos(phi);

    IntegratorConfig cfg;
    cfg.rtol = 1e-11;
    cfg.atol = 1e-13;
    cfg.t_end = 5.0;
    cfg.record_grid = 50;
    const auto res = integrate(flow, y0, cfg);
    REQUIRE(res.completed());
    const double H0 = res.trajectory.front().derived.H.value();
    for (const auto& s : res.trajectory.samples)
        CHECK(s.derived.H.value() == Approx(H0).epsilon(1e-9));
}

TEST_CASE("dependent one-forms are flagged singular", "[nonholonomic]") {
    MechanicalModel mech;
    mech.Minv = Matrix::Identity(3, 3);
    LinearConstraintSet con;
    con.m = 2;
    con.n = 3;
    con.omega = [](const Vector&) {
        Matrix w(2, 3);
        w << 1.0, 0.0, 0.0, 1.0, 0.0, 0.0; // duplicated row
        return w;
    };
    ThermoPhaseState dummy;
    CHECK_THROWS_AS(linear_nonholonomic_field(mech, con, ForceField{}, 0.0,
                                              Vector::Zero(3), Vector::Zero(3)),
                    SingularMultiplierSystem);
}

TEST_CASE("constraint drift aborts the run", "[nonholonomic]") {
    MechanicalModel mech;
    mech.Minv = Matrix::Identity(2, 2);
    LinearConstraintSet con;
    con.m = 1;
    con.n = 2;
    con.omega = [](const Vector&) {
        Matrix w(1, 2);
        w << 0.0, 1.0;
        return w;
    };
    NonholonomicFlow flow(mech, con, ForceField{}, 1e-6);
    Vector y0(4);
    y0 << 0.0, 0.0, 1.0, 0.5; // starts off the constraint surface
    IntegratorConfig cfg;
    cfg.method = StepMethod::RK4Fixed;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    const auto res = integrate(flow, y0, cfg);
    CHECK(res.status == IntegrationStatus::AbortedDomainError);
    CHECK(res.abort_reason.find("constraint residual") != std::string::npos);
}
