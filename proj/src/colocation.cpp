#include "ahs/colocation.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ahs/rng.hpp"

namespace ahs {

namespace {

std::pair<std::pair<int, int>, double> nearest_pair(const Register& a,
                                                    const Register& b) {
    std::pair<int, int> best{0, 0};
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < a.size(); ++i) {
        for (int j = 0; j < b.size(); ++j) {
            const double d = distance_um(a.sites[i], b.sites[j]);
            if (d < best_d) {
                best_d = d;
                best = {i, j};
            }
        }
    }
    return {best, best_d};
}

CountSummary split_counts(const CountSummary& merged, const std::vector<int>& map) {
    CountSummary out{std::vector<long>(map.size(), 0), merged.shots};
    for (std::size_t k = 0; k < map.size(); ++k) {
        out.counts[k] = merged.counts[static_cast<std::size_t>(map[k])];
    }
    return out;
}

}  // namespace

AhsProgram make_attack_program(const AhsProgram& base, double delta_local_peak) {
    const int n = base.reg.size();
    if (n < 3) {
        throw AhsError("attack program needs a register with a top qubit (index 2)");
    }
    std::vector<double> pattern(static_cast<std::size_t>(n), 0.0);
    pattern[2] = 1.0;  // the triangle's designated top qubit

    AhsProgram out = base;
    out.shift.emplace(Waveform::constant(delta_local_peak, base.duration_s),
                      std::move(pattern));
    return out;
}

TenantLayout make_layout(const AhsProgram& victim, const AhsProgram& attacker,
                         const MachineConstraints& constraints) {
    const auto [anchor, separation] = nearest_pair(victim.reg, attacker.reg);
    TenantLayout layout{victim, attacker, separation, anchor};
    validate(merge(layout.victim, layout.attacker).program, constraints);
    return layout;
}

TenantLayout layout_at_distance(const AhsProgram& victim, const AhsProgram& attacker,
                                double d_um, Vec2 direction,
                                const MachineConstraints& constraints) {
    if (!(d_um > 0.0)) {
        throw AhsError("separation distance must be positive");
    }
    const double len = std::hypot(direction.dx_um, direction.dy_um);
    if (!(len > 0.0)) {
        throw AhsError("placement direction must be a nonzero vector");
    }
    const double ux = direction.dx_um / len;
    const double uy = direction.dy_um / len;

    // Translating the attacker by s*u moves each inter-tenant pair distance
    // along a convex curve; past its largest root every pair exceeds d. The
    // wanted shift is therefore the maximum largest-root over all pairs, at
    // which the binding pair sits exactly at d and all others at >= d.
    double shift = -std::numeric_limits<double>::infinity();
    for (const auto& a : attacker.reg.sites) {
        for (const auto& v : victim.reg.sites) {
            const double wx = a.x_um - v.x_um;
            const double wy = a.y_um - v.y_um;
            const double b = wx * ux + wy * uy;
            const double disc = b * b - (wx * wx + wy * wy - d_um * d_um);
            if (disc >= 0.0) {
                shift = std::max(shift, -b + std::sqrt(disc));
            }
        }
    }
    if (!std::isfinite(shift)) {
        throw AhsError("no placement along this direction reaches the requested distance");
    }
    return make_layout(victim, translate(attacker, shift * ux, shift * uy), constraints);
}

ColocatedCounts run_colocated(const TenantLayout& layout, int shots,
                              const std::optional<NoiseModel>& noise,
                              std::uint64_t seed, std::uint64_t run_index,
                              const RunContext& ctx) {
    const MergeResult merged = merge(layout.victim, layout.attacker);
    validate(merged.program, ctx.machine);

    AhsProgram joint = merged.program;
    if (noise && !noise->is_zero()) {
        joint = perturb(joint, *noise, run_index, ctx.machine);
    }

    const QuantumState final_state =
        evolve(joint, ground_state(joint.reg.size()), ctx.integrator, ctx.physics);
    const DetectionError detection = noise ? noise->detection : DetectionError{};
    const CountSummary counts =
        rydberg_counts(sample_shots(final_state, shots, seed, detection));

    return ColocatedCounts{split_counts(counts, merged.index_map_a),
                           split_counts(counts, merged.index_map_b)};
}

MtdOutcome run_with_mtd(const AhsProgram& victim, const AhsProgram& attacker,
                        const MtdPolicy& policy, int shots_per_batch,
                        const std::optional<NoiseModel>& noise, std::uint64_t seed,
                        const RunContext& ctx) {
    if (policy.batches < 1) {
        throw ConfigError("MTD policy needs at least one batch");
    }
    if (shots_per_batch < 1) {
        throw ConfigError("MTD needs at least one shot per batch");
    }
    if (policy.rect_width_um < 0.0 || policy.rect_height_um < 0.0) {
        throw ConfigError("MTD displacement rectangle must have nonnegative extent");
    }

    // Control: the standalone victim at identical total shots and child seeds.
    const std::vector<double> expected_per_batch =
        expected_counts(victim, shots_per_batch, policy.batches, seed, ctx);

    const int n_victim = victim.reg.size();
    CountSummary aggregate{std::vector<long>(static_cast<std::size_t>(n_victim), 0), 0};
    std::vector<MtdBatchRow> rows;
    rows.reserve(static_cast<std::size_t>(policy.batches));

    for (int b = 0; b < policy.batches; ++b) {
        rng::Stream placement(rng::split(policy.seed, static_cast<std::uint64_t>(b)));
        double dx = 0.0, dy = 0.0;
        bool placed = false;
        for (int attempt = 0; attempt < policy.max_placement_tries && !placed; ++attempt) {
            dx = policy.rect_x0_um + policy.rect_width_um * placement.uniform();
            dy = policy.rect_y0_um + policy.rect_height_um * placement.uniform();
            const AhsProgram moved = translate(victim, dx, dy);
            bool ok = true;
            for (const auto& s : moved.reg.sites) {
                if (s.x_um < 0.0 || s.x_um > ctx.machine.field_width_um || s.y_um < 0.0 ||
                    s.y_um > ctx.machine.field_height_um) {
                    ok = false;
                    break;
                }
            }
            for (const auto& s : moved.reg.sites) {
                if (!ok) break;
                for (const auto& a : attacker.reg.sites) {
                    if (distance_um(s, a) < policy.min_attacker_gap_um) {
                        ok = false;
                        break;
                    }
                }
            }
            placed = ok;
        }
        if (!placed) {
            throw PlacementExhausted("no valid victim placement after " +
                                     std::to_string(policy.max_placement_tries) +
                                     " tries in batch " + std::to_string(b));
        }

        const TenantLayout layout =
            make_layout(translate(victim, dx, dy), attacker, ctx.machine);
        const ColocatedCounts counts =
            run_colocated(layout, shots_per_batch, noise,
                          rng::split(seed, static_cast<std::uint64_t>(b)),
                          static_cast<std::uint64_t>(b), ctx);

        const FidelityReport batch_report =
            relative_fidelity(counts.victim, expected_per_batch);
        rows.push_back(MtdBatchRow{b, dx, dy, batch_report.rf});
        for (std::size_t k = 0; k < aggregate.counts.size(); ++k) {
            aggregate.counts[k] += counts.victim.counts[k];
        }
        aggregate.shots += counts.victim.shots;
    }

    std::vector<double> expected_total = expected_per_batch;
    for (auto& e : expected_total) {
        e *= static_cast<double>(policy.batches);
    }
    return MtdOutcome{relative_fidelity(aggregate, expected_total), std::move(rows)};
}

}  // namespace ahs
