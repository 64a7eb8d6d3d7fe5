#pragma once

#include <Eigen/Eigenvalues>
#include <functional>

#include "noneq/hamiltonian.hpp"

namespace noneq {

/// Absolute slack on eigenvalues of symmetric parts: floating-point
/// symmetric eigensolves jitter at machine scale.
inline constexpr double kPsdSlack = 1e-12;

/// Smallest eigenvalue of the symmetric part of a coefficient matrix.
inline double min_symmetric_eigenvalue(const Matrix& r) {
    if (r.size() == 0) return 0.0;
    const Matrix sym = 0.5 * (r + r.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

inline void check_psd(const Matrix& r, const std::string& what) {
    const double lo = min_symmetric_eigenvalue(r);
    if (lo < -kPsdSlack)
        throw IndefiniteCoefficient(what + ": symmetric part has eigenvalue " +
                                    std::to_string(lo) + " < -1e-12");
}

/// External and friction forcing of a system.
///
/// external(t, state) returns a covector on q (zero when unset). friction
/// is the phenomenological coefficient matrix r(q, S); the friction force
/// itself is always F^fr = -r * dH/dp. The symmetric part of r must be
/// positive semi-definite wherever it is evaluated; this is checked at
/// construction time via validate() and spot-checked on recorded samples
/// during integration.
struct ForceField {
    std::function<Vector(double t, const ThermoPhaseState&)> external;
    std::function<Matrix(const Vector& q, double S)> friction;

    Vector external_at(double t, const ThermoPhaseState& s) const {
        if (!external) return Vector::Zero(s.q.size());
        Vector f = external(t, s);
        if (f.size() != s.q.size())
            throw DimensionMismatch("external force has wrong dimension");
        return f;
    }

    Matrix friction_at(const ThermoPhaseState& s) const {
        if (!friction) return Matrix::Zero(s.q.size(), s.q.size());
        Matrix r = friction(s.q, s.S);
        if (r.rows() != s.q.size() || r.cols() != s.q.size())
            throw DimensionMismatch("friction matrix has wrong dimension");
        return r;
    }

    /// PSD check at a reference state. Call once after construction.
    void validate(const ThermoPhaseState& s) const {
        check_psd(friction_at(s), "friction coefficient r(q,S)");
    }
};

inline ForceField no_forces() { return ForceField{}; }

inline ForceField constant_friction(const Matrix& r) {
    check_psd(r, "friction coefficient r");
    ForceField f;
    f.friction = [r](const Vector&, double) { return r; };
    return f;
}

inline std::function<Vector(double, const ThermoPhaseState&)>
constant_external(const Vector& value) {
    return [value](double, const ThermoPhaseState&) { return value; };
}

/// Per-component F_i(t) = amplitude_i * sin(omega t + phase).
inline std::function<Vector(double, const ThermoPhaseState&)>
sinusoidal_external(const Vector& amplitude, double omega, double phase) {
    return [amplitude, omega, phase](double t, const ThermoPhaseState&) {
        return Vector(amplitude * std::sin(omega * t + phase));
    };
}

/// Phenomenological friction covector F^fr = -r(q,S) * dH/dp.
/// Dissipativity <F^fr, dH/dp> <= 0 holds whenever sym(r) is PSD.
inline Vector friction_covector(const ForceField& force,
                                const HamiltonianModel& model,
                                const ThermoPhaseState& state) {
    const Matrix r = force.friction_at(state);
    if (r.size() == 0 || r.isZero(0.0)) return Vector::Zero(state.q.size());
    const Vector v = eval_partials(model, state).dHdp;
    return Vector(-(r * v));
}

} // namespace noneq
