#pragma once

#include "noneq/constraints.hpp"
#include "noneq/force.hpp"

namespace noneq {

/// Mechanical Hamiltonian H = p^T Minv p / 2 + V(q) for the linear
/// nonholonomic class. Keeps the constant inverse mass matrix explicit
/// because the multiplier solve needs d2H/dp2 = Minv.
struct MechanicalModel {
    Matrix Minv;
    std::function<double(const Vector& q)> potential;
    std::function<Vector(const Vector& q)> potential_gradient;

    int n() const { return static_cast<int>(Minv.rows()); }

    HamiltonianModel hamiltonian() const {
        HamiltonianModel model;
        model.kind = SystemKind::LinearNonholonomic;
        model.n = n();
        model.K = 0;
        const Matrix Mi = Minv;
        auto V = potential;
        auto dV = potential_gradient;
        model.energy = [Mi, V](const ThermoPhaseState& s) {
            return 0.5 * s.p.dot(Mi * s.p) + (V ? V(s.q) : 0.0);
        };
        model.partials = [Mi, dV](const ThermoPhaseState& s) {
            Partials d;
            d.dHdq = dV ? dV(s.q) : Vector(Vector::Zero(s.q.size()));
            d.dHdp = Mi * s.p;
            d.dHdS = 0.0;
            return d;
        };
        return model;
    }
};

/// Knife edge (skate) of mass m and moment of inertia I on a plane with
/// effective downhill gravity g_eff along +x. Coordinates q = (x, y, phi);
/// the blade admits velocity only along (cos phi, sin phi).
struct KnifeEdgeParams {
    double m = 1.0;
    double inertia = 1.0;
    double g_eff = 9.81;
};

inline MechanicalModel knife_edge_model(const KnifeEdgeParams& P) {
    if (!(P.m > 0 && P.inertia > 0))
        throw ConfigurationError("knife edge needs positive mass and inertia");
    MechanicalModel mech;
    mech.Minv = Matrix::Zero(3, 3);
    mech.Minv(0, 0) = 1.0 / P.m;
    mech.Minv(1, 1) = 1.0 / P.m;
    mech.Minv(2, 2) = 1.0 / P.inertia;
    const double mg = P.m * P.g_eff;
    mech.potential = [mg](const Vector& q) { return -mg * q[0]; };
    mech.potential_gradient = [mg](const Vector& q) {
        Vector g = Vector::Zero(q.size());
        g[0] = -mg;
        return g;
    };
    return mech;
}

/// No sideways slip: <(-sin phi, cos phi, 0), qdot> = 0.
inline LinearConstraintSet knife_edge_constraint() {
    LinearConstraintSet c;
    c.m = 1;
    c.n = 3;
    c.omega = [](const Vector& q) {
        Matrix w(1, 3);
        w << -std::sin(q[2]), std::cos(q[2]), 0.0;
        return w;
    };
    c.omega_dot = [](const Vector& q, const Vector& qdot) {
        Matrix w(1, 3);
        w << -std::cos(q[2]) * qdot[2], -std::sin(q[2]) * qdot[2], 0.0;
        return w;
    };
    return c;
}

} // namespace noneq
