#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ahs/state.hpp"

// Converts final states into shots and per-qubit Rydberg counts — the
// observable every experiment reports. "Atom count" here means the number of
// shots in which a qubit was read out in the Rydberg state (detuning
// suppresses excitation, so a detuned qubit shows near-zero counts); note
// that some hardware conventions (trap-loss detection) invert this.
//
// Outcomes are drawn per shot by chain-rule conditional sampling: bit k is
// drawn from P(b_k = 1 | b_0..b_{k-1}) using one uniform from the shot's
// outcome substream. This is an exact draw from the basis distribution, and
// it couples same-seed runs of nearby states (common random numbers), which
// keeps seeded control/observed comparisons low-variance. Detection flips
// consume a separate substream so eps = (0, 0) is bit-identical to the
// error-free path.

namespace ahs {

struct DetectionError {
    double eps_g = 0.0;  // P(g read out as r)
    double eps_r = 0.0;  // P(r read out as g)
};

struct ShotBatch {
    int n_qubits = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint32_t> rows;  // bit k of rows[s] = qubit k of shot s

    int shots() const { return static_cast<int>(rows.size()); }
};

struct CountSummary {
    std::vector<long> counts;  // per-qubit Rydberg counts
    long shots = 0;
};

// Born-rule probabilities p_i = |amplitude_i|^2 over the 2^N outcomes.
std::vector<double> probabilities(const QuantumState& state);

// Draws `shots` outcomes from probabilities(state), then applies detection
// errors bit-wise. Deterministic for a fixed seed.
ShotBatch sample_shots(const QuantumState& state, int shots, std::uint64_t seed,
                       DetectionError detection = {});

CountSummary rydberg_counts(const ShotBatch& batch);

// CSV export: header "shot,q0,q1,...", one row per shot.
std::string shot_batch_csv(const ShotBatch& batch);

}  // namespace ahs
