#pragma once

// Umbrella header: variational simulation of simple closed nonequilibrium
// thermodynamic systems (friction, internal matter transfer, chemical
// reactions, linear nonholonomic mechanics) with structure-verification
// diagnostics.

#include "noneq/errors.hpp"
#include "noneq/state.hpp"
#include "noneq/hamiltonian.hpp"
#include "noneq/force.hpp"
#include "noneq/constraints.hpp"
#include "noneq/models/piston.hpp"
#include "noneq/models/transfer_mixture.hpp"
#include "noneq/models/reaction_energy.hpp"
#include "noneq/models/mechanical.hpp"
#include "noneq/dynamics/transfer_network.hpp"
#include "noneq/dynamics/reaction_network.hpp"
#include "noneq/dynamics/flow.hpp"
#include "noneq/dynamics/fields.hpp"
#include "noneq/dynamics/dirac.hpp"
#include "noneq/dynamics/nonholonomic.hpp"
#include "noneq/integrate/trajectory.hpp"
#include "noneq/integrate/integrator.hpp"
#include "noneq/diagnostics/fd.hpp"
#include "noneq/diagnostics/lagrangian.hpp"
#include "noneq/diagnostics/checks.hpp"
#include "noneq/io/csv.hpp"
#include "noneq/io/scenario.hpp"
#include "noneq/io/runtime.hpp"
#include "noneq/io/builtins.hpp"
#include "noneq/io/report.hpp"
