#pragma once

#include "noneq/dynamics/flow.hpp"
#include "noneq/models/mechanical.hpp"

namespace noneq {

struct NonholonomicRates {
    Vector qdot;
    Vector pdot;
    Vector lambda;
    double residual = 0.0; ///< |omega(q) dH/dp|_inf before the step
};

/// Mechanics with linear velocity constraints <omega^r(q), qdot> = 0:
///   qdot = dH/dp
///   pdot = -dH/dq + F_ext + lambda_r omega^r
/// with lambda solved from d/dt (omega^r_i dH/dp_i) = 0, i.e.
///   (omega Minv omega^T) lambda = omega Minv (dV/dq - F_ext) - omegadot qdot.
inline NonholonomicRates linear_nonholonomic_field(
    const MechanicalModel& mech, const LinearConstraintSet& constraints,
    const ForceField& force, double t, const Vector& q, const Vector& p) {
    const int n = mech.n();
    if (q.size() != n || p.size() != n)
        throw DimensionMismatch("state has wrong dimension for mechanical model");
    if (constraints.n != n || constraints.m >= n || constraints.m < 1)
        throw ConfigurationError("need 1 <= m < n constraint one-forms");

    const Matrix omega = constraints.omega_at(q);
    NonholonomicRates out;
    out.qdot = mech.Minv * p;
    out.residual = (omega * out.qdot).cwiseAbs().maxCoeff();

    ThermoPhaseState s;
    s.t = t;
    s.q = q;
    s.p = p;
    const Vector dVdq =
        mech.potential_gradient ? mech.potential_gradient(q) : Vector(Vector::Zero(n));
    const Vector Fext = force.external_at(t, s);

    const Matrix A = omega * mech.Minv * omega.transpose();
    const Vector b = omega * mech.Minv * (dVdq - Fext) -
                     constraints.omega_dot_at(q, out.qdot) * out.qdot;
    Eigen::FullPivLU<Matrix> lu(A);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible())
        throw SingularMultiplierSystem(
            "multiplier system is rank deficient (one-forms dependent at q)");
    out.lambda = lu.solve(b);
    out.pdot = -dVdq + Fext + omega.transpose() * out.lambda;
    return out;
}

class NonholonomicFlow final : public FlowSystem {
public:
    NonholonomicFlow(MechanicalModel mech, LinearConstraintSet constraints,
                     ForceField force = {}, double drift_tolerance = 1e-6)
        : mech_(std::move(mech)),
          constraints_(std::move(constraints)),
          force_(std::move(force)),
          drift_tol_(drift_tolerance),
          hamiltonian_(mech_.hamiltonian()) {
        layout_.n = mech_.n();
        layout_.has_S = false;
    }

    const StateLayout& layout() const override { return layout_; }
    SystemKind kind() const override { return SystemKind::LinearNonholonomic; }

    Vector rhs(double t, const Vector& y) const override {
        const int n = layout_.n;
        const auto r = linear_nonholonomic_field(
            mech_, constraints_, force_, t, y.head(n), y.segment(n, n));
        if (r.residual > drift_tol_)
            throw ConstraintDriftExceeded(
                "constraint residual " + std::to_string(r.residual) +
                " exceeds " + std::to_string(drift_tol_));
        Vector ydot(2 * n);
        ydot.head(n) = r.qdot;
        ydot.tail(n) = r.pdot;
        return ydot;
    }

    DerivedQuantities derived(double t, const Vector& y) const override {
        const int n = layout_.n;
        const auto r = linear_nonholonomic_field(
            mech_, constraints_, force_, t, y.head(n), y.segment(n, n));
        DerivedQuantities d;
        d.H = eval_hamiltonian(hamiltonian_, layout_.unpack(t, y));
        d.multipliers = r.lambda;
        d.constraint_residual = r.residual;
        return d;
    }

    const MechanicalModel& mechanical() const { return mech_; }

private:
    MechanicalModel mech_;
    LinearConstraintSet constraints_;
    ForceField force_;
    double drift_tol_;
    HamiltonianModel hamiltonian_;
    StateLayout layout_;
};

} // namespace noneq
