#pragma once

#include <vector>

#include "noneq/dynamics/flow.hpp"

namespace noneq {

struct Sample {
    double t = 0.0;
    Vector y;
    DerivedQuantities derived;
};

/// Recorded integration output: strictly increasing sample times, uniform
/// dimensions, finite entries (enforced at recording time).
struct Trajectory {
    StateLayout layout;
    SystemKind kind = SystemKind::SimpleFriction;
    std::vector<Sample> samples;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
    const Sample& front() const { return samples.front(); }
    const Sample& back() const { return samples.back(); }
    const Sample& operator[](std::size_t i) const { return samples[i]; }

    ThermoPhaseState state(std::size_t i) const {
        return layout.unpack(samples[i].t, samples[i].y);
    }
};

} // namespace noneq
