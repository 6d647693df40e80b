#pragma once

#include "ahs/evolution.hpp"
#include "ahs/hamiltonian.hpp"
#include "ahs/program.hpp"

// Shared knobs for pipeline-level operations: which machine validates the
// geometry, which constants drive the physics, and how states are propagated.

namespace ahs {

struct RunContext {
    MachineConstraints machine;
    PhysicsConstants physics;
    IntegratorConfig integrator;
};

}  // namespace ahs
