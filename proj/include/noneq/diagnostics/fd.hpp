#pragma once

#include "noneq/hamiltonian.hpp"

namespace noneq {

/// Central finite differences of the energy alone, for cross-checking the
/// analytic partials. Step h = 1e-6 max(1, |x|) per coordinate.
inline Partials central_difference_partials(const HamiltonianModel& model,
                                            const ThermoPhaseState& state) {
    auto diff = [&](auto&& set_coord, double x) {
        const double h = 1e-6 * std::max(1.0, std::abs(x));
        ThermoPhaseState hi = state, lo = state;
        set_coord(hi, x + h);
        set_coord(lo, x - h);
        return (eval_hamiltonian(model, hi) - eval_hamiltonian(model, lo)) /
               (2.0 * h);
    };

    Partials d;
    d.dHdq.resize(state.n());
    d.dHdp.resize(state.n());
    for (int i = 0; i < state.n(); ++i) {
        d.dHdq[i] = diff([i](ThermoPhaseState& s, double x) { s.q[i] = x; },
                         state.q[i]);
        d.dHdp[i] = diff([i](ThermoPhaseState& s, double x) { s.p[i] = x; },
                         state.p[i]);
    }
    d.dHdS = diff([](ThermoPhaseState& s, double x) { s.S = x; }, state.S);
    d.dHdN.resize(state.K());
    for (int k = 0; k < state.K(); ++k)
        d.dHdN[k] = diff([k](ThermoPhaseState& s, double x) { s.N[k] = x; },
                         state.N[k]);
    return d;
}

/// Largest relative disagreement between analytic and finite-difference
/// partials; the denominator floors at 1 so near-zero components compare
/// absolutely.
inline double max_partial_deviation(const HamiltonianModel& model,
                                    const ThermoPhaseState& state) {
    const Partials a = eval_partials(model, state);
    const Partials f = central_difference_partials(model, state);
    double worst = 0.0;
    auto cmp = [&worst](double x, double y) {
        const double denom = std::max({1.0, std::abs(x), std::abs(y)});
        worst = std::max(worst, std::abs(x - y) / denom);
    };
    for (int i = 0; i < state.n(); ++i) {
        cmp(a.dHdq[i], f.dHdq[i]);
        cmp(a.dHdp[i], f.dHdp[i]);
    }
    cmp(a.dHdS, f.dHdS);
    for (int k = 0; k < state.K(); ++k) cmp(a.dHdN[k], f.dHdN[k]);
    return worst;
}

} // namespace noneq
