#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "noneq/integrate/trajectory.hpp"

namespace noneq {

enum class StepMethod { RK4Fixed, EmbeddedAdaptive };

struct IntegratorConfig {
    StepMethod method = StepMethod::EmbeddedAdaptive;
    double dt = 1e-3;      ///< fixed step (RK4Fixed) / initial step (adaptive)
    double rtol = 1e-10;
    double atol = 1e-12;
    double dt_min = 1e-12;
    double dt_max = 1e300;
    double t0 = 0.0;
    double t_end = 1.0;
    int record_stride = 1; ///< record every k-th accepted step
    int record_grid = 0;   ///< if > 0, record on a uniform grid of this many intervals

    void validate() const {
        if (!(dt > 0)) throw ConfigurationError("dt must be > 0");
        if (!(rtol > 0) || !(atol > 0))
            throw ConfigurationError("rtol and atol must be > 0");
        if (!(dt_min <= dt_max))
            throw ConfigurationError("dt_min must be <= dt_max");
        if (!(t_end >= t0)) throw ConfigurationError("t_end must be >= t0");
        if (record_stride < 1 || record_grid < 0)
            throw ConfigurationError("invalid recording settings");
    }
};

enum class IntegrationStatus { Completed, AbortedDomainError, StepUnderflow };

struct IntegrationResult {
    Trajectory trajectory;
    IntegrationStatus status = IntegrationStatus::Completed;
    std::string abort_reason;

    bool completed() const { return status == IntegrationStatus::Completed; }
};

/// One classical 4th-order step; local error O(dt^5). Domain errors from
/// the field propagate out unchanged.
inline Vector step_rk4(const FlowSystem& flow, double t, const Vector& y,
                       double dt) {
    const Vector k1 = flow.rhs(t, y);
    const Vector k2 = flow.rhs(t + 0.5 * dt, y + (0.5 * dt) * k1);
    const Vector k3 = flow.rhs(t + 0.5 * dt, y + (0.5 * dt) * k2);
    const Vector k4 = flow.rhs(t + dt, y + dt * k3);
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace detail {

// Dormand-Prince 5(4) tableau
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                            c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                            b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                            e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
};

/// Scaled max-norm of the local error estimate.
inline double error_norm(const Vector& err, const Vector& y0, const Vector& y1,
                         double rtol, double atol) {
    double norm = 0.0;
    for (int i = 0; i < err.size(); ++i) {
        const double scale =
            atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        norm = std::max(norm, std::abs(err[i]) / scale);
    }
    return norm;
}

inline bool all_finite(const Vector& y) {
    return y.allFinite();
}

} // namespace detail

/// Time-step an assembled flow and record the trajectory with derived
/// quantities. Domain errors abort with a partial trajectory rather than
/// throwing; configuration errors still throw.
inline IntegrationResult integrate(const FlowSystem& flow, const Vector& y0,
                                   const IntegratorConfig& config) {
    config.validate();
    if (y0.size() != flow.layout().size())
        throw DimensionMismatch("initial state has wrong dimension for flow");

    IntegrationResult result;
    Trajectory& traj = result.trajectory;
    traj.layout = flow.layout();
    traj.kind = flow.kind();

    auto record = [&](double t, const Vector& y) {
        DerivedQuantities d = flow.derived(t, y);
        if (!detail::all_finite(y))
            throw DomainError("non-finite value in recorded state");
        flow.spot_check(t, y);
        traj.samples.push_back(Sample{t, y, std::move(d)});
    };

    const double span = config.t_end - config.t0;
    double next_grid_t = config.t_end;
    int grid_index = 0;
    auto grid_time = [&](int i) {
        return config.t0 + span * static_cast<double>(i) /
                               static_cast<double>(config.record_grid);
    };
    if (config.record_grid > 0) next_grid_t = grid_time(1), grid_index = 1;

    try {
        record(config.t0, y0);
        if (span == 0.0) return result;

        double t = config.t0;
        Vector y = y0;
        long accepted = 0;

        if (config.method == StepMethod::RK4Fixed) {
            while (t < config.t_end) {
                double dt = std::min(config.dt, config.t_end - t);
                if (config.record_grid > 0)
                    dt = std::min(dt, next_grid_t - t);
                if (!(dt > 0.0) || t + dt == t) break; // at the resolution limit
                y = step_rk4(flow, t, y, dt);
                t += dt;
                ++accepted;
                const bool on_grid =
                    config.record_grid > 0 && t >= next_grid_t - 1e-14 * span;
                if (on_grid) {
                    t = next_grid_t; // land exactly
                    record(t, y);
                    ++grid_index;
                    next_grid_t = grid_index <= config.record_grid
                                      ? grid_time(grid_index)
                                      : config.t_end + span;
                } else if (config.record_grid == 0 &&
                           (accepted % config.record_stride == 0 ||
                            t >= config.t_end)) {
                    record(t, y);
                }
            }
            if (traj.back().t < config.t_end) record(t, y);
            return result;
        }

        // Embedded Dormand-Prince 5(4)
        using T = detail::Dopri5;
        double dt = std::min({config.dt, config.dt_max, span});
        Vector k1 = flow.rhs(t, y);
        while (t < config.t_end) {
            dt = std::min(dt, config.t_end - t);
            if (config.record_grid > 0) dt = std::min(dt, next_grid_t - t);
            if (!(dt > 0.0) || t + dt == t) break; // at the resolution limit
            bool accepted_step = false;
            std::string domain_msg;
            while (!accepted_step) {
                bool stage_failed = false;
                Vector k2, k3, k4, k5, k6, k7, y_new;
                try {
                    k2 = flow.rhs(t + T::c2 * dt, y + dt * (T::a21 * k1));
                    k3 = flow.rhs(t + T::c3 * dt,
                                  y + dt * (T::a31 * k1 + T::a32 * k2));
                    k4 = flow.rhs(t + T::c4 * dt,
                                  y + dt * (T::a41 * k1 + T::a42 * k2 +
                                            T::a43 * k3));
                    k5 = flow.rhs(t + T::c5 * dt,
                                  y + dt * (T::a51 * k1 + T::a52 * k2 +
                                            T::a53 * k3 + T::a54 * k4));
                    k6 = flow.rhs(t + dt,
                                  y + dt * (T::a61 * k1 + T::a62 * k2 +
                                            T::a63 * k3 + T::a64 * k4 +
                                            T::a65 * k5));
                    y_new = y + dt * (T::b1 * k1 + T::b3 * k3 + T::b4 * k4 +
                                      T::b5 * k5 + T::b6 * k6);
                    k7 = flow.rhs(t + dt, y_new);
                } catch (const DomainError& e) {
                    // trial stage poked outside the admissible domain:
                    // retreat before giving up
                    stage_failed = true;
                    domain_msg = e.what();
                }
                double err = 0.0;
                if (!stage_failed) {
                    const Vector e = dt * (T::e1 * k1 + T::e3 * k3 +
                                           T::e4 * k4 + T::e5 * k5 +
                                           T::e6 * k6 + T::e7 * k7);
                    err = detail::error_norm(e, y, y_new, config.rtol,
                                             config.atol);
                    if (!std::isfinite(err)) {
                        stage_failed = true;
                        domain_msg = "non-finite values during trial step";
                    }
                }
                if (!stage_failed && err <= 1.0) {
                    t += dt;
                    y = y_new;
                    k1 = k7; // FSAL
                    accepted_step = true;
                    ++accepted;
                    const double grow = err == 0.0
                                            ? 5.0
                                            : 0.9 * std::pow(err, -0.2);
                    dt = std::clamp(dt * std::clamp(grow, 0.2, 5.0),
                                    config.dt_min, config.dt_max);
                } else {
                    const double shrink =
                        stage_failed
                            ? 0.5
                            : std::max(0.2, 0.9 * std::pow(err, -0.2));
                    const double dt_new = dt * shrink;
                    if (dt_new < config.dt_min) {
                        if (stage_failed) throw DomainError(domain_msg);
                        throw StepUnderflow(
                            "step control needs dt < dt_min at t = " +
                            std::to_string(t));
                    }
                    dt = dt_new;
                }
            }
            const bool on_grid =
                config.record_grid > 0 && t >= next_grid_t - 1e-14 * span;
            if (on_grid) {
                t = next_grid_t;
                record(t, y);
                ++grid_index;
                next_grid_t = grid_index <= config.record_grid
                                  ? grid_time(grid_index)
                                  : config.t_end + span;
            } else if (config.record_grid == 0 &&
                       (accepted % config.record_stride == 0 ||
                        t >= config.t_end)) {
                record(t, y);
            }
        }
        if (traj.back().t < config.t_end) record(config.t_end, y);
        return result;
    } catch (const StepUnderflow& e) {
        result.status = IntegrationStatus::StepUnderflow;
        result.abort_reason = e.what();
    } catch (const DomainError& e) {
        result.status = IntegrationStatus::AbortedDomainError;
        result.abort_reason = e.what();
    } catch (const ConstraintDriftExceeded& e) {
        result.status = IntegrationStatus::AbortedDomainError;
        result.abort_reason = e.what();
    }
    return result;
}

} // namespace noneq
