#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "noneq/dynamics/fields.hpp"

namespace noneq {

/// A primary constraint phi_A(q,p) = 0 on the image of the Legendre
/// transform. The totally degenerate reaction class only ever produces
/// plain momentum coordinates phi_A = p_A.
struct PrimaryConstraint {
    enum class Form { MomentumCoordinate, General };
    Form form = Form::MomentumCoordinate;
    int momentum_index = 0;
    std::function<double(const Vector& q, const Vector& p)> value;

    static PrimaryConstraint momentum(int index) {
        PrimaryConstraint c;
        c.form = Form::MomentumCoordinate;
        c.momentum_index = index;
        return c;
    }

    double eval(const Vector& q, const Vector& p) const {
        if (form == Form::MomentumCoordinate) return p[momentum_index];
        return value(q, p);
    }
};

struct PrimaryConstraintSet {
    std::vector<PrimaryConstraint> items;

    int count() const { return static_cast<int>(items.size()); }

    Vector residuals(const Vector& q, const Vector& p) const {
        Vector r(count());
        for (int a = 0; a < count(); ++a) r[a] = items[a].eval(q, p);
        return r;
    }
};

/// H_T(q, p, lambda) = H~(q, p) + sum_A lambda^A phi_A(q, p), where H~ is a
/// constrained Hamiltonian matching the generalized energy on the graph of
/// the Legendre transform. For reactions q = (N_1..N_R, S), H~ = U(q), and
/// lagrangian(q, v) = -U(q) is kept around so tests can probe E and the
/// Legendre graph directly.
struct TotalHamiltonian {
    std::function<double(const Vector& q, const Vector& p)> base;
    std::function<Vector(const Vector& q, const Vector& p)> base_dq;
    std::function<Vector(const Vector& q, const Vector& p)> base_dp;
    std::function<double(const Vector& q, const Vector& v)> lagrangian;
    PrimaryConstraintSet constraints;

    double value(const Vector& q, const Vector& p, const Vector& lambda) const {
        double h = base(q, p);
        for (int a = 0; a < constraints.count(); ++a)
            h += lambda[a] * constraints.items[a].eval(q, p);
        return h;
    }

    /// E(q, v, p) = <p, v> - L(q, v).
    double generalized_energy(const Vector& q, const Vector& v,
                              const Vector& p) const {
        return p.dot(v) - lagrangian(q, v);
    }
};

/// Build the total Hamiltonian of a reacting mixture from its internal
/// energy: L(q, v) = -U(q) is independent of every velocity, so all R+1
/// momenta are primary constraints and H~ = U.
inline TotalHamiltonian reaction_total_hamiltonian(const HamiltonianModel& energy) {
    if (energy.kind != SystemKind::ReactionNetwork)
        throw UnsupportedConstraintStructure(
            "total-Hamiltonian construction covers the reaction class only");
    const int R = energy.K;
    auto to_state = [R](const Vector& q) {
        ThermoPhaseState s;
        s.N = q.head(R);
        s.S = q[R];
        s.W = Vector::Zero(R);
        return s;
    };
    TotalHamiltonian total;
    total.base = [energy, to_state](const Vector& q, const Vector&) {
        return eval_hamiltonian(energy, to_state(q));
    };
    total.base_dq = [energy, to_state, R](const Vector& q, const Vector&) {
        const Partials d = eval_partials(energy, to_state(q));
        Vector g(R + 1);
        g.head(R) = d.dHdN;
        g[R] = d.dHdS;
        return g;
    };
    total.base_dp = [R](const Vector&, const Vector&) {
        return Vector(Vector::Zero(R + 1));
    };
    total.lagrangian = [energy, to_state](const Vector& q, const Vector&) {
        return -eval_hamiltonian(energy, to_state(q));
    };
    for (int a = 0; a < R + 1; ++a)
        total.constraints.items.push_back(PrimaryConstraint::momentum(a));
    return total;
}

/// Degenerate-form flow: integrates the full set of curves
/// (N, S, p_N, p_S, W, nu) with the multipliers eliminated at each step.
/// The consistency conditions d/dt phi_A = 0 pin the constrained momenta,
/// so phi_A stays at machine zero along trajectories started on P.
class DiracUnreducedFlow final : public FlowSystem {
public:
    DiracUnreducedFlow(TotalHamiltonian total, ReactionNetwork network,
                       HamiltonianModel energy)
        : total_(std::move(total)),
          network_(std::move(network)),
          energy_(std::move(energy)) {
        layout_.n = 0;
        layout_.K = energy_.K;
        layout_.R = network_.reaction_count();
        layout_.has_S = true;
        layout_.extended_momenta = true;
    }

    const StateLayout& layout() const override { return layout_; }
    SystemKind kind() const override { return SystemKind::ReactionNetwork; }

    /// lambda^A along the curve: lambda^{N_I} = J_a nu^a_I, lambda^S = J.A/T.
    Vector multipliers(const ThermoPhaseState& s) const {
        const double T = temperature(energy_, s);
        const Vector mu = eval_partials(energy_, s).dHdN;
        const Vector J = reaction_rates(network_, s, mu);
        const Vector A = affinities(network_, mu);
        const int R = energy_.K;
        Vector lambda(R + 1);
        lambda.head(R) = species_rates(network_, J);
        lambda[R] = J.dot(A) / T;
        return lambda;
    }

    Vector primary_residuals(const Vector& y) const {
        const int R = energy_.K;
        Vector q(R + 1), p(R + 1);
        q.head(R) = y.segment(layout_.iN(), R);
        q[R] = y[layout_.iS()];
        p.head(R) = y.segment(layout_.ipN(), R);
        p[R] = y[layout_.ipS()];
        return total_.constraints.residuals(q, p);
    }

    Vector rhs(double t, const Vector& y) const override {
        const ThermoPhaseState s = layout_.unpack(t, y);
        const Vector lambda = multipliers(s);
        const Vector mu = eval_partials(energy_, s).dHdN;
        const Vector A = affinities(network_, mu);
        const int R = energy_.K;

        Vector ydot = Vector::Zero(layout_.size());
        // qdot = dH_T/dp = lambda on the momentum-coordinate constraints
        ydot.segment(layout_.iN(), R) = lambda.head(R);
        ydot[layout_.iS()] = lambda[R];
        // d/dt phi_A = 0 keeps p_N, p_S on the Legendre image; with
        // pdot_N = 0 the W equation collapses to Wdot = mu
        ydot.segment(layout_.ipN(), R).setZero();
        ydot[layout_.ipS()] = 0.0;
        ydot.segment(layout_.iW(), R) = mu;
        ydot.segment(layout_.inu(), network_.reaction_count()) = -A;
        return ydot;
    }

    DerivedQuantities derived(double t, const Vector& y) const override {
        const ThermoPhaseState s = layout_.unpack(t, y);
        DerivedQuantities d;
        const Partials pd = eval_partials(energy_, s);
        d.T = pd.dHdS;
        d.mu = pd.dHdN;
        d.affinities = affinities(network_, d.mu);
        d.rates = reaction_rates(network_, s, d.mu);
        d.sigma = d.rates.dot(d.affinities) / pd.dHdS;
        d.multipliers = multipliers(s);
        const int R = energy_.K;
        Vector q(R + 1), p(R + 1);
        q.head(R) = s.N;
        q[R] = s.S;
        p.head(R) = y.segment(layout_.ipN(), R);
        p[R] = y[layout_.ipS()];
        d.H = total_.value(q, p, d.multipliers);
        d.constraint_residual =
            total_.constraints.residuals(q, p).cwiseAbs().maxCoeff();
        return d;
    }

    const TotalHamiltonian& total() const { return total_; }

private:
    TotalHamiltonian total_;
    ReactionNetwork network_;
    HamiltonianModel energy_;
    StateLayout layout_;
};

/// Reduced flow assembled through the Dirac machinery: the rates are the
/// extracted multipliers themselves. Produces the same numbers as
/// reaction_field, which is exactly the consistency the tests pin down.
class DiracReducedFlow final : public FlowSystem {
public:
    DiracReducedFlow(TotalHamiltonian total, ReactionNetwork network,
                     HamiltonianModel energy)
        : unreduced_(std::move(total), std::move(network), std::move(energy)) {
        layout_.n = 0;
        layout_.K = unreduced_.layout().K;
        layout_.R = unreduced_.layout().R;
        layout_.has_S = true;
    }

    const StateLayout& layout() const override { return layout_; }
    SystemKind kind() const override { return SystemKind::ReactionNetwork; }

    Vector multipliers(const ThermoPhaseState& s) const {
        return unreduced_.multipliers(s);
    }

    Vector rhs(double t, const Vector& y) const override {
        // embed on the constraint surface p = 0 and reuse the degenerate form
        Vector yext = Vector::Zero(unreduced_.layout().size());
        yext.head(layout_.size()) = y;
        return unreduced_.rhs(t, yext).head(layout_.size());
    }

    DerivedQuantities derived(double t, const Vector& y) const override {
        Vector yext = Vector::Zero(unreduced_.layout().size());
        yext.head(layout_.size()) = y;
        DerivedQuantities d = unreduced_.derived(t, yext);
        d.constraint_residual.reset(); // identically zero in this representation
        return d;
    }

private:
    DiracUnreducedFlow unreduced_;
    StateLayout layout_;
};

struct DiracReduction {
    std::shared_ptr<DiracReducedFlow> reduced;
    std::shared_ptr<DiracUnreducedFlow> unreduced;
    std::function<Vector(const ThermoPhaseState&)> multipliers;
};

/// Eliminate the multipliers of a totally degenerate reaction-class total
/// Hamiltonian. Requires every primary constraint to be a momentum
/// coordinate, each momentum constrained exactly once, and H~ independent
/// of the momenta (probed numerically at probe_state).
inline DiracReduction dirac_reduce(const TotalHamiltonian& total,
                                   const ReactionNetwork& network,
                                   const HamiltonianModel& energy,
                                   const ThermoPhaseState& probe_state) {
    const int R = energy.K;
    if (total.constraints.count() != R + 1)
        throw UnsupportedConstraintStructure(
            "need one primary constraint per momentum coordinate");
    std::vector<bool> seen(R + 1, false);
    for (const auto& c : total.constraints.items) {
        if (c.form != PrimaryConstraint::Form::MomentumCoordinate)
            throw UnsupportedConstraintStructure(
                "primary constraints must be momentum coordinates");
        if (c.momentum_index < 0 || c.momentum_index > R ||
            seen[c.momentum_index])
            throw UnsupportedConstraintStructure(
                "each momentum must be constrained exactly once");
        seen[c.momentum_index] = true;
    }

    // H~ must not see the constrained momenta
    Vector q(R + 1);
    q.head(R) = probe_state.N;
    q[R] = probe_state.S;
    const Vector p0 = Vector::Zero(R + 1);
    const double h0 = total.base(q, p0);
    for (int a = 0; a <= R; ++a) {
        Vector p = p0;
        p[a] = 0.5 + 0.25 * a;
        if (std::abs(total.base(q, p) - h0) >
            1e-9 * std::max(1.0, std::abs(h0)))
            throw UnsupportedConstraintStructure(
                "constrained Hamiltonian depends on a constrained momentum");
    }

    DiracReduction red;
    red.reduced = std::make_shared<DiracReducedFlow>(total, network, energy);
    red.unreduced = std::make_shared<DiracUnreducedFlow>(total, network, energy);
    auto unred = red.unreduced;
    red.multipliers = [unred](const ThermoPhaseState& s) {
        return unred->multipliers(s);
    };
    return red;
}

} // namespace noneq
