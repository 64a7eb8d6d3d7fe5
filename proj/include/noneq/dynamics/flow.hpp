#pragma once

#include <optional>

#include "noneq/state.hpp"
#include "noneq/hamiltonian.hpp"

namespace noneq {

/// Maps a ThermoPhaseState (plus, for degenerate-form integration, the
/// constrained momenta) onto a flat vector for time stepping.
/// Segment order: q(n) | p(n) | S | N(K) | W(K) | nu(R) | p_N(K) | p_S.
struct StateLayout {
    int n = 0;
    int K = 0;
    int R = 0;
    bool has_S = true;
    bool extended_momenta = false;

    int iq() const { return 0; }
    int ip() const { return n; }
    int iS() const { return 2 * n; }
    int iN() const { return 2 * n + (has_S ? 1 : 0); }
    int iW() const { return iN() + K; }
    int inu() const { return iW() + K; }
    int ipN() const { return inu() + R; }
    int ipS() const { return ipN() + K; }
    int size() const {
        return 2 * n + (has_S ? 1 : 0) + 2 * K + R +
               (extended_momenta ? K + 1 : 0);
    }

    Vector pack(const ThermoPhaseState& s) const {
        Vector y = Vector::Zero(size());
        y.segment(iq(), n) = s.q;
        y.segment(ip(), n) = s.p;
        if (has_S) y[iS()] = s.S;
        if (K > 0) {
            y.segment(iN(), K) = s.N;
            y.segment(iW(), K) = s.W;
        }
        if (R > 0 && s.nu_ext.size() == R) y.segment(inu(), R) = s.nu_ext;
        return y;
    }

    ThermoPhaseState unpack(double t, const Vector& y) const {
        ThermoPhaseState s;
        s.t = t;
        s.q = y.segment(iq(), n);
        s.p = y.segment(ip(), n);
        s.S = has_S ? y[iS()] : 0.0;
        s.N = y.segment(iN(), K);
        s.W = y.segment(iW(), K);
        s.nu_ext = y.segment(inu(), R);
        return s;
    }

    Vector pack_rates(const StateRates& r) const {
        Vector y = Vector::Zero(size());
        if (n > 0) {
            y.segment(iq(), n) = r.qdot;
            y.segment(ip(), n) = r.pdot;
        }
        if (has_S) y[iS()] = r.Sdot;
        if (K > 0) {
            y.segment(iN(), K) = r.Ndot;
            y.segment(iW(), K) = r.Wdot;
        }
        if (R > 0 && r.nudot.size() == R) y.segment(inu(), R) = r.nudot;
        return y;
    }
};

/// Per-sample derived quantities recorded alongside the state.
struct DerivedQuantities {
    std::optional<double> H;
    std::optional<double> T;
    std::optional<double> sigma; ///< entropy production rate
    Vector mu;          ///< chemical potentials
    Vector fluxes;      ///< transfer pair fluxes J^{k->l}, k < l
    Vector rates;       ///< reaction fluxes J_a
    Vector affinities;  ///< A^a
    Vector multipliers; ///< lambda (Dirac or nonholonomic)
    std::optional<double> constraint_residual;
};

/// An assembled right-hand side together with its layout and the derived
/// quantities it can report. Pure functions of (t, y): safe to evaluate
/// concurrently.
class FlowSystem {
public:
    virtual ~FlowSystem() = default;
    virtual const StateLayout& layout() const = 0;
    virtual SystemKind kind() const = 0;
    virtual Vector rhs(double t, const Vector& y) const = 0;
    virtual DerivedQuantities derived(double t, const Vector& y) const = 0;
    /// Coefficient sanity re-checks run on recorded samples.
    virtual void spot_check(double t, const Vector& y) const {
        (void)t;
        (void)y;
    }
};

} // namespace noneq
