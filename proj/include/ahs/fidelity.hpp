#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ahs/measurement.hpp"
#include "ahs/run_context.hpp"

// Relative fidelity: 1 minus the averaged normalized deviation of observed
// per-qubit counts from a control expectation; 1 is ideal. The default
// normalizes per-qubit deviations by total shots (bounded even when an
// expected count is near zero, as it is for a detuned qubit); the
// expectation-normalized mode divides by max(e_k, 1) instead.

namespace ahs {

enum class RfMode {
    kShotNormalized,
    kExpectationNormalized,
};

struct FidelityReport {
    std::vector<double> expected;  // fractional counts allowed
    std::vector<long> observed;
    long shots = 0;
    double rf = 0.0;  // clamped to [0, 1]
    RfMode mode = RfMode::kShotNormalized;
};

// Control expectation: runs the noiseless pipeline `repeats` times with child
// seeds split(seed, r) and returns per-qubit mean counts (fractional) for
// `shots` shots.
std::vector<double> expected_counts(const AhsProgram& p, int shots, int repeats,
                                    std::uint64_t seed, const RunContext& ctx = {});

FidelityReport relative_fidelity(const CountSummary& observed,
                                 const std::vector<double>& expected,
                                 RfMode mode = RfMode::kShotNormalized);

std::string fidelity_report_json(const FidelityReport& report);

const char* rf_mode_name(RfMode mode);

}  // namespace ahs
