#pragma once

#include "ahs/hamiltonian.hpp"
#include "ahs/program.hpp"
#include "ahs/state.hpp"

// Propagates i d/dt |psi> = H(t) |psi> over the program duration.
//
// The default method evaluates H at each step midpoint and applies
// exp(-i H_mid dt) through a truncated Taylor series (matrix-free). It is
// norm-preserving up to the truncation tolerance and exact per step for
// piecewise-constant Hamiltonians. RK4 is retained as an independent
// cross-check; it needs a smaller dt for stiff vdW scales.

namespace ahs {

enum class IntegratorMethod {
    kMidpointExponential,
    kRk4,
};

struct IntegratorConfig {
    double dt_s = 1e-9;
    IntegratorMethod method = IntegratorMethod::kMidpointExponential;
    double taylor_tol = 1e-12;  // per-step truncation threshold, in (0, 1e-6]
};

// Evolves `initial` from t = 0 to the program duration. Fails with NormDrift
// if the final norm deviates from 1 by more than 1e-8 (no silent
// renormalization) or if the per-step series does not converge.
QuantumState evolve(const AhsProgram& p, const QuantumState& initial,
                    const IntegratorConfig& cfg = {},
                    const PhysicsConstants& constants = {});

struct ConvergenceReport {
    double dt_s = 0.0;
    double max_probability_diff = 0.0;  // between the dt and dt/2 runs
};

// Runs evolve at dt and dt/2 and reports the largest absolute difference of
// basis-state probabilities.
ConvergenceReport convergence_check(const AhsProgram& p, const QuantumState& initial,
                                    const IntegratorConfig& cfg = {},
                                    const PhysicsConstants& constants = {});

}  // namespace ahs
