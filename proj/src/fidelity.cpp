#include "ahs/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <string>

#include "ahs/rng.hpp"

namespace ahs {

std::vector<double> expected_counts(const AhsProgram& p, int shots, int repeats,
                                    std::uint64_t seed, const RunContext& ctx) {
    if (repeats < 1) {
        throw AhsError("expected_counts needs at least one repeat");
    }
    // The noiseless pipeline is deterministic up to sampling seeds, so the
    // state is evolved once and sampled per repeat.
    const QuantumState final_state =
        evolve(p, ground_state(p.reg.size()), ctx.integrator, ctx.physics);

    std::vector<double> mean(static_cast<std::size_t>(p.reg.size()), 0.0);
    for (int r = 0; r < repeats; ++r) {
        const ShotBatch batch = sample_shots(final_state, shots,
                                             rng::split(seed, static_cast<std::uint64_t>(r)));
        const CountSummary counts = rydberg_counts(batch);
        for (std::size_t k = 0; k < mean.size(); ++k) {
            mean[k] += static_cast<double>(counts.counts[k]);
        }
    }
    for (auto& m : mean) {
        m /= static_cast<double>(repeats);
    }
    return mean;
}

FidelityReport relative_fidelity(const CountSummary& observed,
                                 const std::vector<double>& expected, RfMode mode) {
    if (observed.counts.size() != expected.size()) {
        throw LengthMismatch("observed " + std::to_string(observed.counts.size()) +
                             " qubits, expected " + std::to_string(expected.size()));
    }
    if (observed.counts.empty() || observed.shots < 1) {
        throw LengthMismatch("observed counts must cover at least one qubit and shot");
    }

    const double n = static_cast<double>(expected.size());
    double dev = 0.0;
    for (std::size_t k = 0; k < expected.size(); ++k) {
        const double diff = std::abs(static_cast<double>(observed.counts[k]) - expected[k]);
        if (mode == RfMode::kShotNormalized) {
            dev += diff / static_cast<double>(observed.shots);
        } else {
            dev += diff / std::max(expected[k], 1.0);
        }
    }
    const double rf = std::clamp(1.0 - dev / n, 0.0, 1.0);
    return FidelityReport{expected, observed.counts, observed.shots, rf, mode};
}

const char* rf_mode_name(RfMode mode) {
    return mode == RfMode::kShotNormalized ? "shot-normalized" : "expectation-normalized";
}

std::string fidelity_report_json(const FidelityReport& report) {
    nlohmann::json j;
    j["expected"] = report.expected;
    j["observed"] = report.observed;
    j["shots"] = report.shots;
    j["rf"] = report.rf;
    j["mode"] = rf_mode_name(report.mode);
    return j.dump(2) + "\n";
}

}  // namespace ahs
