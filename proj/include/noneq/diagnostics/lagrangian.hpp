#pragma once

#include <limits>

#include "noneq/dynamics/fields.hpp"
#include "noneq/integrate/integrator.hpp"
#include "noneq/models/piston.hpp"

namespace noneq {

/// Velocity-side formulation L(q, v, S) = v^T M v / 2 - U(q, S) of the
/// friction class, used as an independent oracle against the momentum-side
/// equations. The partial Legendre transform v -> p = M v is a
/// diffeomorphism whenever M is invertible, which is checked up front.
struct LagrangianModel {
    Matrix M;
    std::function<double(const Vector& q, double S)> potential;
    std::function<Vector(const Vector& q, double S)> potential_gradient;
    std::function<double(const Vector& q, double S)> potential_dS;

    int n() const { return static_cast<int>(M.rows()); }

    double lagrangian(const Vector& q, const Vector& v, double S) const {
        return 0.5 * v.dot(M * v) - potential(q, S);
    }
    Vector dLdv(const Vector&, const Vector& v, double) const { return M * v; }
    Vector dLdq(const Vector& q, const Vector&, double S) const {
        return -potential_gradient(q, S);
    }
    double dLdS(const Vector& q, const Vector&, double S) const {
        return -potential_dS(q, S);
    }
    /// E(q, v, S) = <dL/dv, v> - L.
    double energy(const Vector& q, const Vector& v, double S) const {
        return 0.5 * v.dot(M * v) + potential(q, S);
    }
};

inline LagrangianModel piston_lagrangian(const PistonParams& P) {
    validate(P);
    LagrangianModel L;
    L.M = Matrix::Constant(1, 1, P.m);
    L.potential = [P](const Vector& q, double S) {
        return piston_internal_energy(P, q[0], S);
    };
    L.potential_gradient = [P](const Vector& q, double S) {
        const double T = piston_temperature(P, q[0], S);
        return Vector(Vector::Constant(1, -P.N0 * P.R * T / q[0]));
    };
    L.potential_dS = [P](const Vector& q, double S) {
        return piston_temperature(P, q[0], S);
    };
    return L;
}

inline LagrangianModel harmonic_lagrangian(const HarmonicParams& P) {
    LagrangianModel L;
    L.M = Matrix::Constant(1, 1, P.m);
    L.potential = [P](const Vector& q, double S) {
        return 0.5 * P.k * q[0] * q[0] + P.C * P.T0 * std::exp((S - P.S0) / P.C);
    };
    L.potential_gradient = [P](const Vector& q, double) {
        return Vector(Vector::Constant(1, P.k * q[0]));
    };
    L.potential_dS = [P](const Vector&, double S) {
        return P.T0 * std::exp((S - P.S0) / P.C);
    };
    return L;
}

/// Velocity-side evolution:
///   d/dt (dL/dv) = dL/dq + F_fr + F_ext,   (dL/dS) Sdot = <F_fr, v>,
/// with F_fr(q, v, S) = -r(q, S) v. Integrated in (q, v, S) variables; the
/// momentum-side comparison maps v through the Legendre transform.
class LagrangianFlow final : public FlowSystem {
public:
    LagrangianFlow(LagrangianModel model, ForceField force)
        : model_(std::move(model)), force_(std::move(force)) {
        Eigen::FullPivLU<Matrix> lu(model_.M);
        if (!lu.isInvertible())
            throw LegendreInversionFailure("mass matrix is singular");
        Minv_ = lu.inverse();
        layout_.n = model_.n();
        layout_.has_S = true;
    }

    const StateLayout& layout() const override { return layout_; }
    SystemKind kind() const override { return SystemKind::SimpleFriction; }

    Vector rhs(double t, const Vector& y) const override {
        const int n = layout_.n;
        const Vector q = y.head(n);
        const Vector v = y.segment(n, n); // velocity in the momentum slot
        const double S = y[2 * n];

        ThermoPhaseState s;
        s.t = t;
        s.q = q;
        s.p = v;
        s.S = S;
        const Matrix r = force_.friction_at(s);
        const Vector Ffr = Vector(-(r * v));
        const double dLdS = model_.dLdS(q, v, S);
        if (!(-dLdS > 0.0))
            throw NonPositiveTemperature("-dL/dS <= 0 on the velocity side");

        Vector ydot(layout_.size());
        ydot.head(n) = v;
        ydot.segment(n, n) =
            Minv_ * (model_.dLdq(q, v, S) + Ffr + force_.external_at(t, s));
        ydot[2 * n] = Ffr.dot(v) / dLdS;
        return ydot;
    }

    DerivedQuantities derived(double t, const Vector& y) const override {
        const int n = layout_.n;
        const Vector q = y.head(n);
        const Vector v = y.segment(n, n);
        const double S = y[2 * n];
        ThermoPhaseState s;
        s.t = t;
        s.q = q;
        s.p = v;
        s.S = S;
        DerivedQuantities d;
        d.H = model_.energy(q, v, S);
        d.T = -model_.dLdS(q, v, S);
        d.sigma = v.dot(force_.friction_at(s) * v) / *d.T;
        return d;
    }

    const LagrangianModel& model() const { return model_; }

private:
    LagrangianModel model_;
    ForceField force_;
    Matrix Minv_;
    StateLayout layout_;
};

struct OracleComparison {
    double max_state_deviation = 0.0;   ///< scaled by max(1, per-component sup)
    double temperature_residual = 0.0;  ///< max rel |(-dL/dS) - dH/dS|
    IntegrationStatus status = IntegrationStatus::Completed;
};

/// Integrate the same friction-class scenario on both sides of the
/// Legendre transform and report the largest scaled state deviation.
/// config.record_grid must be set so both runs sample identical times.
inline OracleComparison lagrangian_oracle_compare(
    const HamiltonianModel& hmodel, const LagrangianModel& lmodel,
    const ForceField& force, const ThermoPhaseState& initial,
    const IntegratorConfig& config) {
    if (config.record_grid <= 0)
        throw ConfigurationError("oracle comparison needs record_grid > 0");

    FrictionFlow hflow(hmodel, force);
    const auto hres = integrate(hflow, hflow.layout().pack(initial), config);

    // same initial point mapped through v = dH/dp
    const Vector v0 = eval_partials(hmodel, initial).dHdp;
    ThermoPhaseState linit = initial;
    linit.p = v0;
    LagrangianFlow lflow(lmodel, force);
    const auto lres = integrate(lflow, lflow.layout().pack(linit), config);

    OracleComparison out;
    if (!hres.completed() || !lres.completed()) {
        out.status = hres.completed() ? lres.status : hres.status;
        out.max_state_deviation = std::numeric_limits<double>::infinity();
        return out;
    }

    const int n = hmodel.n;
    const auto& hs = hres.trajectory.samples;
    const auto& ls = lres.trajectory.samples;
    Vector scale = Vector::Ones(2 * n + 1);
    for (const auto& smp : hs)
        scale = scale.cwiseMax(smp.y.cwiseAbs());

    for (std::size_t i = 0; i < hs.size() && i < ls.size(); ++i) {
        const Vector q = ls[i].y.head(n);
        const Vector v = ls[i].y.segment(n, n);
        const double S = ls[i].y[2 * n];
        Vector mapped(2 * n + 1);
        mapped.head(n) = q;
        mapped.segment(n, n) = lmodel.dLdv(q, v, S);
        mapped[2 * n] = S;
        const Vector dev = (mapped - hs[i].y).cwiseAbs().cwiseQuotient(scale);
        out.max_state_deviation = std::max(out.max_state_deviation, dev.maxCoeff());

        // both temperature definitions must agree on matched states
        ThermoPhaseState s;
        s.t = ls[i].t;
        s.q = q;
        s.p = mapped.segment(n, n);
        s.S = S;
        const double Th = eval_partials(hmodel, s).dHdS;
        const double Tl = -lmodel.dLdS(q, v, S);
        out.temperature_residual = std::max(
            out.temperature_residual, std::abs(Th - Tl) / std::abs(Th));
    }
    return out;
}

} // namespace noneq
