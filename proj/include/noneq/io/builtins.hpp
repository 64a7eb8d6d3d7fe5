#pragma once

#include <vector>

#include "noneq/io/scenario.hpp"

namespace noneq {

/// Built-in scenario documents. They go through the same parser and
/// validation as user files.
inline json builtin_scenario_json(const std::string& name) {
    if (name == "piston") {
        return json{
            {"name", "piston"},
            {"kind", "friction"},
            {"model",
             {{"type", "piston"},
              {"m", 1.0},
              {"alpha", 0.01},
              {"N0", 0.02},
              {"cv", 12.471},
              {"T0", 300.0},
              {"V0", 0.002},
              {"S0", 0.0},
              {"r", 1.0}}},
            {"initial", {{"q", {0.2}}, {"p", {0.0}}, {"S", 0.0}}},
            {"integrator",
             {{"method", "adaptive"},
              {"rtol", 1e-10},
              {"atol", 1e-12},
              {"dt", 1e-3},
              {"t_end", 10.0},
              {"record_grid", 1000}}},
            {"checks",
             {{"first-law", 1e-8},
              {"second-law", 1e-10},
              {"entropy-nondecreasing", 1e-10},
              {"entropy-rate-formula", 1e-10},
              {"phenomenological-constraint", 1e-12},
              {"lagrangian-oracle", 1e-7},
              {"temperature-consistency", 1e-9},
              {"gradient-fd", 1e-6}}}};
    }
    if (name == "piston-forced") {
        return json{
            {"name", "piston-forced"},
            {"kind", "friction"},
            {"model",
             {{"type", "piston"},
              {"m", 1.0},
              {"alpha", 0.01},
              {"N0", 0.02},
              {"cv", 12.471},
              {"T0", 300.0},
              {"V0", 0.002},
              {"S0", 0.0},
              {"r", 1.0}}},
            {"force",
             {{"external", {{"type", "constant"}, {"value", {-80.0}}}}}},
            {"initial", {{"q", {0.2}}, {"p", {0.0}}, {"S", 0.0}}},
            {"integrator",
             {{"method", "adaptive"},
              {"rtol", 1e-10},
              {"atol", 1e-12},
              {"dt", 1e-3},
              {"t_end", 40.0},
              {"record_grid", 2000}}},
            {"checks",
             {{"first-law", 1e-7},
              {"second-law", 1e-10},
              {"equilibrium", 1e-6},
              {"phenomenological-constraint", 1e-12},
              {"lagrangian-oracle", 1e-7},
              {"temperature-consistency", 1e-9},
              {"gradient-fd", 1e-6}}}};
    }
    if (name == "transfer-2c") {
        return json{
            {"name", "transfer-2c"},
            {"kind", "transfer"},
            {"model",
             {{"type", "ideal-mixture"},
              {"m", 1.0},
              {"spring", 0.0},
              {"volumes", {0.001, 0.002}},
              {"cv", 12.471},
              {"s0", 0.0},
              {"v0", 0.1},
              {"T0", 300.0}}},
            {"transfer", {{"G", {{0.0, 5e-7}, {0.0, 0.0}}}}},
            {"initial",
             {{"q", {0.0}}, {"p", {0.0}}, {"T", 300.0}, {"N", {0.015, 0.005}}}},
            {"integrator",
             {{"method", "adaptive"},
              {"rtol", 1e-10},
              {"atol", 1e-12},
              {"dt", 1e-3},
              {"t_end", 100.0},
              {"record_grid", 1000}}},
            {"checks",
             {{"first-law", 1e-8},
              {"second-law", 1e-10},
              {"entropy-nondecreasing", 1e-10},
              {"entropy-rate-formula", 1e-10},
              {"mole-conservation", 1e-12},
              {"equilibrium", 1e-6},
              {"phenomenological-constraint", 1e-12},
              {"gradient-fd", 1e-6}}}};
    }
    if (name == "transfer-3c") {
        return json{
            {"name", "transfer-3c"},
            {"kind", "transfer"},
            {"model",
             {{"type", "ideal-mixture"},
              {"m", 1.0},
              {"spring", 4.0},
              {"volumes", {0.001, 0.001, 0.002}},
              {"cv", 12.471},
              {"s0", 0.0},
              {"v0", 0.1},
              {"T0", 300.0}}},
            {"force", {{"friction", {{0.5}}}}},
            {"transfer",
             {{"G",
               {{0.0, 4e-7, 0.0}, {0.0, 0.0, 6e-7}, {0.0, 0.0, 0.0}}}}},
            {"initial",
             {{"q", {0.0}},
              {"p", {0.5}},
              {"T", 300.0},
              {"N", {0.01, 0.002, 0.004}}}},
            {"integrator",
             {{"method", "adaptive"},
              {"rtol", 1e-10},
              {"atol", 1e-12},
              {"dt", 1e-3},
              {"t_end", 80.0},
              {"record_grid", 1000}}},
            {"checks",
             {{"first-law", 1e-8},
              {"second-law", 1e-10},
              {"entropy-nondecreasing", 1e-10},
              {"entropy-rate-formula", 1e-10},
              {"mole-conservation", 1e-12},
              {"equilibrium", 1e-6},
              {"phenomenological-constraint", 1e-12},
              {"gradient-fd", 1e-6}}}};
    }
    if (name == "reaction-ab") {
        return json{
            {"name", "reaction-ab"},
            {"kind", "reaction"},
            {"model",
             {{"type", "ideal-mixture"},
              {"cv", {12.471, 20.786}},
              {"u0", {500.0, 0.0}},
              {"s0", {0.0, 0.0}},
              {"v0", 0.1},
              {"volume", 0.001},
              {"T0", 300.0}}},
            {"reaction",
             {{"species", {"A", "B"}},
              {"masses", {0.018, 0.018}},
              {"nu_fwd", {{1, 0}}},
              {"nu_bwd", {{0, 1}}},
              {"rate_law", {{"type", "linear"}, {"L", {{8e-7}}}}}}},
            {"initial", {{"T", 300.0}, {"N", {0.02, 0.01}}}},
            {"integrator",
             {{"method", "adaptive"},
              {"rtol", 1e-10},
              {"atol", 1e-12},
              {"dt", 1e-3},
              {"t_end", 60.0},
              {"record_grid", 1000}}},
            {"checks",
             {{"second-law", 1e-10},
              {"entropy-nondecreasing", 1e-10},
              {"mass-conservation", 1e-12},
              {"energy-conservation", 1e-9},
              {"equilibrium", 1e-6},
              {"dirac-agreement", 1e-9},
              {"dirac-primary", 1e-10},
              {"dirac-multipliers", 1e-9},
              {"phenomenological-constraint", 1e-12},
              {"gradient-fd", 1e-6}}}};
    }
    if (name == "reaction-2a-b") {
        return json{
            {"name", "reaction-2a-b"},
            {"kind", "reaction"},
            {"model",
             {{"type", "ideal-mixture"},
              {"cv", {12.471, 20.786}},
              {"u0", {800.0, 0.0}},
              {"s0", {0.0, 0.0}},
              {"v0", 0.1},
              {"volume", 0.001},
              {"T0", 300.0}}},
            {"reaction",
             {{"species", {"A", "B"}},
              {"masses", {0.01, 0.02}},
              {"nu_fwd", {{2, 0}}},
              {"nu_bwd", {{0, 1}}},
              {"rate_law", {{"type", "linear"}, {"L", {{4e-7}}}}}}},
            {"initial", {{"T", 300.0}, {"N", {0.02, 0.005}}}},
            {"integrator",
             {{"method", "adaptive"},
              {"rtol", 1e-10},
              {"atol", 1e-12},
              {"dt", 1e-3},
              {"t_end", 60.0},
              {"record_grid", 1000}}},
            {"checks",
             {{"second-law", 1e-10},
              {"entropy-nondecreasing", 1e-10},
              {"mass-conservation", 1e-12},
              {"energy-conservation", 1e-9},
              {"equilibrium", 1e-6},
              {"dirac-agreement", 1e-9},
              {"dirac-primary", 1e-10},
              {"dirac-multipliers", 1e-9},
              {"phenomenological-constraint", 1e-12},
              {"gradient-fd", 1e-6}}}};
    }
    if (name == "skate") {
        return json{
            {"name", "skate"},
            {"kind", "nonholonomic"},
            {"model",
             {{"type", "knife-edge"}, {"m", 1.0}, {"inertia", 1.0}, {"g_eff", 2.0}}},
            {"constraint", {{"drift_tol", 1e-6}}},
            {"initial", {{"q", {0.0, 0.0, 0.0}}, {"p", {0.0, 0.0, 1.0}}}},
            {"integrator",
             {{"method", "adaptive"},
              {"rtol", 1e-11},
              {"atol", 1e-13},
              {"dt", 1e-3},
              {"t_end", 10.0},
              {"record_grid", 1000}}},
            {"checks", {{"constraint-residual", 1e-9}, {"gradient-fd", 1e-6}}}};
    }
    throw ConfigurationError("unknown builtin scenario '" + name + "'");
}

inline std::vector<std::string> builtin_scenario_names() {
    return {"piston",      "piston-forced", "transfer-2c", "transfer-3c",
            "reaction-ab", "reaction-2a-b", "skate"};
}

} // namespace noneq
