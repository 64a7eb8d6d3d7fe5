#pragma once

#include <functional>

#include "noneq/force.hpp"

namespace noneq {

/// Codimension-one variational constraint of thermodynamic type,
///
///     dS_coeff * delta S = dq_coeff . delta q + dW_coeff . delta W,
///
/// with dS_coeff = -dH/dS = -T, dq_coeff the friction covector, and
/// dW_coeff the flux pairings on the thermodynamic displacements (empty
/// for pure friction systems). The kinematic (phenomenological) constraint
/// is the same relation evaluated on actual velocities, so a field
/// assembly is consistent exactly when kinematic_residual of its output
/// rates vanishes.
struct ThermoVariationalConstraint {
    double dS_coeff = 0.0;
    Vector dq_coeff;
    Vector dW_coeff;

    double kinematic_residual(const StateRates& rates) const {
        double r = dS_coeff * rates.Sdot;
        if (dq_coeff.size() > 0) r -= dq_coeff.dot(rates.qdot);
        if (dW_coeff.size() > 0) r -= dW_coeff.dot(rates.Wdot);
        return r;
    }
};

/// Linear nonholonomic constraints <omega^r(q), v> = 0, r = 1..m < n.
///
/// omega(q) returns the m x n coefficient matrix. omega_dot must return
/// d/dt omega(q(t)) given (q, qdot); when unset it is approximated by a
/// central difference along qdot.
struct LinearConstraintSet {
    int m = 0;
    int n = 0;
    std::function<Matrix(const Vector& q)> omega;
    std::function<Matrix(const Vector& q, const Vector& qdot)> omega_dot;

    Matrix omega_at(const Vector& q) const {
        Matrix w = omega(q);
        if (w.rows() != m || w.cols() != n)
            throw DimensionMismatch("constraint one-forms have wrong shape");
        return w;
    }

    Matrix omega_dot_at(const Vector& q, const Vector& qdot) const {
        if (omega_dot) return omega_dot(q, qdot);
        const double h = 1e-6 / std::max(1.0, qdot.norm());
        return Matrix((omega_at(q + h * qdot) - omega_at(q - h * qdot)) /
                      (2.0 * h));
    }
};

} // namespace noneq
