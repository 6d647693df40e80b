#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ahs/fidelity.hpp"
#include "ahs/noise.hpp"
#include "ahs/run_context.hpp"

// Co-located tenants on one register: the shifting-field attack scenario and
// the Moving Target Defense. A layout merges victim first, so victim qubit k
// is merged qubit k and seeded victim counts stay comparable with standalone
// runs of the same seed.

namespace ahs {

struct Vec2 {
    double dx_um = 0.0;
    double dy_um = 0.0;
};

struct TenantLayout {
    AhsProgram victim;
    AhsProgram attacker;
    double separation_um = 0.0;           // nearest inter-tenant site distance
    std::pair<int, int> anchor{0, 0};     // (victim site, attacker site) realizing it
};

// The base program with a constant shifting field of the given peak applied
// to the top qubit (index 2 by the triangle convention), 0 elsewhere.
AhsProgram make_attack_program(const AhsProgram& base, double delta_local_peak);

// Builds a layout from tenants as placed; computes the anchor pair and
// validates the merged program.
TenantLayout make_layout(const AhsProgram& victim, const AhsProgram& attacker,
                         const MachineConstraints& constraints = {});

// Translates the attacker along `direction` so the nearest inter-tenant
// distance equals d_um, then validates. The victim never moves.
TenantLayout layout_at_distance(const AhsProgram& victim, const AhsProgram& attacker,
                                double d_um, Vec2 direction,
                                const MachineConstraints& constraints = {});

struct ColocatedCounts {
    CountSummary victim;
    CountSummary attacker;
};

// Merges, perturbs (when noise is given), evolves the joint state, samples
// one batch and splits counts via the merge index maps.
ColocatedCounts run_colocated(const TenantLayout& layout, int shots,
                              const std::optional<NoiseModel>& noise,
                              std::uint64_t seed, std::uint64_t run_index = 0,
                              const RunContext& ctx = {});

struct MtdPolicy {
    // Uniform displacement support for the victim, relative to its position.
    double rect_x0_um = -30.0;
    double rect_y0_um = -30.0;
    double rect_width_um = 30.0;
    double rect_height_um = 30.0;
    int batches = 10;
    bool move_after_measure = true;  // placement-sequence bookkeeping only
    double min_attacker_gap_um = 8.0;
    std::uint64_t seed = 0;
    int max_placement_tries = 1000;
};

struct MtdBatchRow {
    int batch = 0;
    double dx_um = 0.0;
    double dy_um = 0.0;
    double rf = 0.0;  // this batch's counts against the per-batch expectation
};

struct MtdOutcome {
    FidelityReport report;  // aggregated victim counts vs standalone expectation
    std::vector<MtdBatchRow> rows;
};

// For each batch: sample a displacement from the policy (rejecting placements
// that leave the field or come closer than min_attacker_gap to any attacker
// site), translate the victim, run co-located with child seed split(seed,
// batch), and aggregate victim counts. The expectation is the standalone
// victim (no attacker, no MTD) at the same total shots and seeds.
MtdOutcome run_with_mtd(const AhsProgram& victim, const AhsProgram& attacker,
                        const MtdPolicy& policy, int shots_per_batch,
                        const std::optional<NoiseModel>& noise, std::uint64_t seed,
                        const RunContext& ctx = {});

}  // namespace ahs
