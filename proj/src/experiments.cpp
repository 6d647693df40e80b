#include "ahs/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "ahs/program_io.hpp"
#include "ahs/rng.hpp"
#include "format_util.hpp"
#include "parallel.hpp"

namespace ahs {

namespace {

using nlohmann::json;
using detail::format_double;

// Reserved stream indices hanging off the experiment / noise seeds.
constexpr std::uint64_t kSiteFieldStream = 1000003;
constexpr std::uint64_t kPlacementStream = 1000033;

const char* kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::kControl: return "control";
        case ExperimentKind::kHeatmap: return "heatmap";
        case ExperimentKind::kSweep: return "sweep";
        case ExperimentKind::kMtd: return "mtd";
    }
    return "?";
}

double require_number(const json& j, const char* key, double fallback,
                      bool* present = nullptr) {
    const auto it = j.find(key);
    if (it == j.end()) {
        if (present) *present = false;
        return fallback;
    }
    if (!it->is_number()) {
        throw ConfigError(std::string("config field \"") + key + "\" must be a number");
    }
    if (present) *present = true;
    return it->get<double>();
}

int require_int(const json& j, const char* key, int fallback) {
    const double v = require_number(j, key, fallback);
    return static_cast<int>(v);
}

AhsProgram parse_program_ref(const json& j, const std::string& config_dir,
                             const char* key) {
    if (!j.is_object()) {
        throw ConfigError(std::string("config field \"") + key +
                          "\" must be a program object or {\"file\": path}");
    }
    if (j.contains("file")) {
        const std::filesystem::path ref(j.at("file").get<std::string>());
        const auto path = ref.is_absolute() ? ref : std::filesystem::path(config_dir) / ref;
        return load_program_file(path.string());
    }
    return program_from_json(j);
}

RunContext parse_context(const json& doc) {
    RunContext ctx;
    if (doc.contains("machine")) {
        const json& m = doc.at("machine");
        ctx.machine.field_width_um = require_number(m, "field_width_um", ctx.machine.field_width_um);
        ctx.machine.field_height_um = require_number(m, "field_height_um", ctx.machine.field_height_um);
        ctx.machine.min_spacing_um = require_number(m, "min_spacing_um", ctx.machine.min_spacing_um);
        ctx.machine.max_atoms = require_int(m, "max_atoms", ctx.machine.max_atoms);
    }
    if (doc.contains("physics")) {
        ctx.physics.c6 = require_number(doc.at("physics"), "c6", ctx.physics.c6);
    }
    if (doc.contains("integrator")) {
        const json& i = doc.at("integrator");
        ctx.integrator.dt_s = require_number(i, "dt_s", ctx.integrator.dt_s);
        ctx.integrator.taylor_tol = require_number(i, "taylor_tol", ctx.integrator.taylor_tol);
        if (i.contains("method")) {
            const std::string m = i.at("method").get<std::string>();
            if (m == "midpoint-exponential") {
                ctx.integrator.method = IntegratorMethod::kMidpointExponential;
            } else if (m == "rk4") {
                ctx.integrator.method = IntegratorMethod::kRk4;
            } else {
                throw ConfigError("unknown integrator method \"" + m + "\"");
            }
        }
    }
    return ctx;
}

std::optional<NoiseModel> parse_noise(const json& doc, std::uint64_t experiment_seed,
                                      const MachineConstraints& machine, json& echo) {
    if (!doc.contains("noise") || doc.at("noise").is_null()) {
        echo = nullptr;
        return std::nullopt;
    }
    const json& n = doc.at("noise");
    NoiseModel model;
    model.pos_jitter_sigma_um = require_number(n, "pos_jitter_sigma_um", 0.0);
    model.omega_rel_sigma = require_number(n, "omega_rel_sigma", 0.0);
    model.delta_offset_sigma = require_number(n, "delta_offset_sigma", 0.0);
    if (n.contains("detection")) {
        const json& d = n.at("detection");
        model.detection.eps_g = require_number(d, "eps_g", 0.0);
        model.detection.eps_r = require_number(d, "eps_r", 0.0);
    }
    model.seed = n.contains("seed") ? n.at("seed").get<std::uint64_t>() : experiment_seed;

    echo = json{{"pos_jitter_sigma_um", model.pos_jitter_sigma_um},
                {"omega_rel_sigma", model.omega_rel_sigma},
                {"delta_offset_sigma", model.delta_offset_sigma},
                {"detection", json{{"eps_g", model.detection.eps_g},
                                   {"eps_r", model.detection.eps_r}}},
                {"seed", model.seed},
                {"site_field", nullptr}};

    if (n.contains("site_field") && !n.at("site_field").is_null()) {
        const json& f = n.at("site_field");
        SiteFieldSpec spec;
        spec.nx = require_int(f, "nx", spec.nx);
        spec.ny = require_int(f, "ny", spec.ny);
        spec.delta_sigma = require_number(f, "delta_sigma", 0.0);
        spec.omega_rel_sigma = require_number(f, "omega_rel_sigma", 0.0);
        spec.correlation_length_um =
            require_number(f, "correlation_length_um", spec.correlation_length_um);
        model.site_field =
            sample_site_field(spec, machine, rng::split(model.seed, kSiteFieldStream));
        echo["site_field"] = json{{"nx", spec.nx},
                                  {"ny", spec.ny},
                                  {"delta_sigma", spec.delta_sigma},
                                  {"omega_rel_sigma", spec.omega_rel_sigma},
                                  {"correlation_length_um", spec.correlation_length_um}};
    }
    return model;
}

json machine_echo(const MachineConstraints& m) {
    return json{{"field_width_um", m.field_width_um},
                {"field_height_um", m.field_height_um},
                {"min_spacing_um", m.min_spacing_um},
                {"max_atoms", m.max_atoms}};
}

json integrator_echo(const IntegratorConfig& i) {
    return json{{"dt_s", i.dt_s},
                {"method", i.method == IntegratorMethod::kMidpointExponential
                               ? "midpoint-exponential"
                               : "rk4"},
                {"taylor_tol", i.taylor_tol}};
}

}  // namespace

ExperimentConfig parse_experiment_config(ExperimentKind kind, const json& doc,
                                         const std::string& config_dir) {
    if (!doc.is_object()) {
        throw ConfigError("experiment config must be a JSON object");
    }
    ExperimentConfig cfg;
    cfg.kind = kind;

    if (!doc.contains("seed")) {
        throw ConfigError("config requires an explicit \"seed\" (no wall-clock seeding)");
    }
    cfg.seed = doc.at("seed").get<std::uint64_t>();

    if (!doc.contains("program")) {
        throw ConfigError("config requires a \"program\"");
    }
    cfg.program = parse_program_ref(doc.at("program"), config_dir, "program");

    cfg.shots = require_int(doc, "shots", cfg.shots);
    cfg.repeats = require_int(doc, "repeats", cfg.repeats);
    if (cfg.shots < 1) throw ConfigError("shots must be >= 1");
    if (cfg.repeats < 1) throw ConfigError("repeats must be >= 1");

    cfg.ctx = parse_context(doc);

    json noise_echo;
    cfg.noise = parse_noise(doc, cfg.seed, cfg.ctx.machine, noise_echo);

    if (kind == ExperimentKind::kHeatmap) {
        if (!doc.contains("grid")) {
            throw ConfigError("heatmap config requires a \"grid\"");
        }
        const json& g = doc.at("grid");
        if (g.contains("origin")) {
            const json& o = g.at("origin");
            if (!o.is_array() || o.size() != 2) {
                throw ConfigError("grid origin must be [x_um, y_um]");
            }
            cfg.grid.origin_x_um = o[0].get<double>();
            cfg.grid.origin_y_um = o[1].get<double>();
        }
        cfg.grid.nx = require_int(g, "nx", cfg.grid.nx);
        cfg.grid.ny = require_int(g, "ny", cfg.grid.ny);
        cfg.grid.step_um = require_number(g, "step_um", cfg.grid.step_um);
        if (cfg.grid.nx < 1 || cfg.grid.ny < 1 || !(cfg.grid.step_um > 0.0)) {
            throw ConfigError("grid needs nx, ny >= 1 and a positive step");
        }
    }

    if (kind == ExperimentKind::kSweep || kind == ExperimentKind::kMtd) {
        if (!doc.contains("attacker")) {
            throw ConfigError(std::string(kind_name(kind)) +
                              " config requires an \"attacker\" program");
        }
        cfg.attacker = parse_program_ref(doc.at("attacker"), config_dir, "attacker");
        if (doc.contains("direction")) {
            const json& u = doc.at("direction");
            if (!u.is_array() || u.size() != 2) {
                throw ConfigError("direction must be [ux, uy]");
            }
            cfg.direction = Vec2{u[0].get<double>(), u[1].get<double>()};
        }
    }

    if (kind == ExperimentKind::kSweep) {
        if (!doc.contains("distances_um") || !doc.at("distances_um").is_array() ||
            doc.at("distances_um").empty()) {
            throw ConfigError("sweep config requires a non-empty \"distances_um\" array");
        }
        for (const auto& d : doc.at("distances_um")) {
            cfg.distances_um.push_back(d.get<double>());
        }
    }

    if (kind == ExperimentKind::kMtd) {
        cfg.static_distance_um = require_number(doc, "static_distance_um", 5.0);
        cfg.mtd.seed = rng::split(cfg.seed, kPlacementStream);
        if (doc.contains("mtd")) {
            const json& m = doc.at("mtd");
            if (m.contains("rect")) {
                const json& r = m.at("rect");
                if (!r.is_array() || r.size() != 4) {
                    throw ConfigError("mtd rect must be [x0_um, y0_um, width_um, height_um]");
                }
                cfg.mtd.rect_x0_um = r[0].get<double>();
                cfg.mtd.rect_y0_um = r[1].get<double>();
                cfg.mtd.rect_width_um = r[2].get<double>();
                cfg.mtd.rect_height_um = r[3].get<double>();
            }
            cfg.mtd.batches = require_int(m, "batches", cfg.mtd.batches);
            cfg.mtd.min_attacker_gap_um =
                require_number(m, "min_attacker_gap_um", cfg.mtd.min_attacker_gap_um);
            if (m.contains("move_after_measure")) {
                cfg.mtd.move_after_measure = m.at("move_after_measure").get<bool>();
            }
            cfg.mtd.max_placement_tries =
                require_int(m, "max_placement_tries", cfg.mtd.max_placement_tries);
            if (m.contains("seed")) {
                cfg.mtd.seed = m.at("seed").get<std::uint64_t>();
            }
        }
        if (cfg.mtd.batches < 1) {
            throw ConfigError("mtd batches must be >= 1");
        }
    }

    if (doc.contains("out")) {
        cfg.out_path = doc.at("out").get<std::string>();
    } else {
        cfg.out_path = std::string(kind_name(kind)) +
                       (kind == ExperimentKind::kControl ? ".json"
                        : kind == ExperimentKind::kMtd   ? ""
                                                         : ".csv");
    }

    // Canonical echo with every knob materialized.
    json resolved;
    resolved["kind"] = kind_name(kind);
    resolved["program"] = program_to_json(cfg.program);
    if (cfg.attacker) resolved["attacker"] = program_to_json(*cfg.attacker);
    resolved["shots"] = cfg.shots;
    resolved["repeats"] = cfg.repeats;
    resolved["seed"] = cfg.seed;
    resolved["noise"] = noise_echo;
    resolved["machine"] = machine_echo(cfg.ctx.machine);
    resolved["physics"] = json{{"c6", cfg.ctx.physics.c6}};
    resolved["integrator"] = integrator_echo(cfg.ctx.integrator);
    if (kind == ExperimentKind::kHeatmap) {
        resolved["grid"] = json{{"origin", json::array({cfg.grid.origin_x_um,
                                                        cfg.grid.origin_y_um})},
                                {"nx", cfg.grid.nx},
                                {"ny", cfg.grid.ny},
                                {"step_um", cfg.grid.step_um}};
    }
    if (kind == ExperimentKind::kSweep) {
        resolved["distances_um"] = cfg.distances_um;
    }
    if (kind == ExperimentKind::kSweep || kind == ExperimentKind::kMtd) {
        resolved["direction"] = json::array({cfg.direction.dx_um, cfg.direction.dy_um});
    }
    if (kind == ExperimentKind::kMtd) {
        resolved["static_distance_um"] = cfg.static_distance_um;
        resolved["mtd"] = json{{"rect", json::array({cfg.mtd.rect_x0_um, cfg.mtd.rect_y0_um,
                                                     cfg.mtd.rect_width_um,
                                                     cfg.mtd.rect_height_um})},
                               {"batches", cfg.mtd.batches},
                               {"min_attacker_gap_um", cfg.mtd.min_attacker_gap_um},
                               {"move_after_measure", cfg.mtd.move_after_measure},
                               {"max_placement_tries", cfg.mtd.max_placement_tries},
                               {"seed", cfg.mtd.seed}};
    }
    resolved["out"] = cfg.out_path;
    cfg.resolved = std::move(resolved);
    return cfg;
}

namespace {

std::string csv_preamble(const ExperimentConfig& cfg, const char* schema) {
    std::string out = "# ";
    out += schema;
    out += "\n# config: " + cfg.resolved.dump() + "\n";
    out += "# program_hash: fnv1a64:" + program_hash_hex(cfg.program) + "\n";
    if (cfg.attacker) {
        out += "# attacker_hash: fnv1a64:" + program_hash_hex(*cfg.attacker) + "\n";
    }
    return out;
}

DetectionError detection_of(const ExperimentConfig& cfg) {
    return cfg.noise ? cfg.noise->detection : DetectionError{};
}

std::vector<Artifact> cmd_control(const ExperimentConfig& cfg) {
    validate(cfg.program, cfg.ctx.machine);
    const std::vector<double> expected =
        expected_counts(cfg.program, cfg.shots, cfg.repeats, cfg.seed, cfg.ctx);

    json artifact;
    artifact["schema"] = "ahs-control/1";
    artifact["config"] = cfg.resolved;
    artifact["program_hash"] = "fnv1a64:" + program_hash_hex(cfg.program);
    artifact["expected"] = expected;
    artifact["shots"] = cfg.shots;
    artifact["repeats"] = cfg.repeats;
    artifact["seed"] = cfg.seed;
    return {Artifact{cfg.out_path, artifact.dump(2) + "\n"}};
}

std::vector<Artifact> cmd_heatmap(const ExperimentConfig& cfg) {
    validate(cfg.program, cfg.ctx.machine);
    const int cells = cfg.grid.nx * cfg.grid.ny;

    std::vector<CountSummary> counts(static_cast<std::size_t>(cells));
    detail::parallel_for(cells, [&](int c) {
        const int ix = c % cfg.grid.nx;
        const int iy = c / cfg.grid.nx;
        AhsProgram placed = translate(cfg.program,
                                      cfg.grid.origin_x_um + ix * cfg.grid.step_um,
                                      cfg.grid.origin_y_um + iy * cfg.grid.step_um);
        validate(placed, cfg.ctx.machine);
        if (cfg.noise && !cfg.noise->is_zero()) {
            placed = perturb(placed, *cfg.noise, static_cast<std::uint64_t>(c),
                             cfg.ctx.machine);
        }
        const QuantumState state = evolve(placed, ground_state(placed.reg.size()),
                                          cfg.ctx.integrator, cfg.ctx.physics);
        counts[static_cast<std::size_t>(c)] = rydberg_counts(
            sample_shots(state, cfg.shots,
                         rng::split(cfg.seed, static_cast<std::uint64_t>(c)),
                         detection_of(cfg)));
    });

    // The control expectation pools every cell, as the temporal study does.
    std::vector<double> pooled(static_cast<std::size_t>(cfg.program.reg.size()), 0.0);
    for (const auto& c : counts) {
        for (std::size_t k = 0; k < pooled.size(); ++k) {
            pooled[k] += static_cast<double>(c.counts[k]);
        }
    }
    for (auto& p : pooled) p /= static_cast<double>(cells);

    std::string csv = csv_preamble(cfg, "ahs-heatmap/1");
    csv += "ix,iy,x_um,y_um,rf\n";
    for (int c = 0; c < cells; ++c) {
        const int ix = c % cfg.grid.nx;
        const int iy = c / cfg.grid.nx;
        const double rf =
            relative_fidelity(counts[static_cast<std::size_t>(c)], pooled).rf;
        csv += std::to_string(ix) + "," + std::to_string(iy) + "," +
               format_double(cfg.grid.origin_x_um + ix * cfg.grid.step_um) + "," +
               format_double(cfg.grid.origin_y_um + iy * cfg.grid.step_um) + "," +
               format_double(rf) + "\n";
    }
    return {Artifact{cfg.out_path, std::move(csv)}};
}

struct SweepPoint {
    double rf = 0.0;
    double rf_err = 0.0;
};

SweepPoint sweep_point(const ExperimentConfig& cfg, int distance_index) {
    const double d = cfg.distances_um[static_cast<std::size_t>(distance_index)];
    const std::uint64_t seed_d =
        rng::split(cfg.seed, static_cast<std::uint64_t>(distance_index));
    const TenantLayout layout = layout_at_distance(cfg.program, *cfg.attacker, d,
                                                   cfg.direction, cfg.ctx.machine);
    const std::vector<double> expected =
        expected_counts(cfg.program, cfg.shots, cfg.repeats, seed_d, cfg.ctx);

    const int n_victim = cfg.program.reg.size();
    const bool noiseless = !cfg.noise || cfg.noise->is_zero();

    // Noiseless repeats share one joint evolution and differ only in seeds.
    std::optional<QuantumState> joint_state;
    if (noiseless) {
        const MergeResult merged = merge(layout.victim, layout.attacker);
        validate(merged.program, cfg.ctx.machine);
        joint_state = evolve(merged.program, ground_state(merged.program.reg.size()),
                             cfg.ctx.integrator, cfg.ctx.physics);
    }

    CountSummary pooled{std::vector<long>(static_cast<std::size_t>(n_victim), 0), 0};
    std::vector<double> per_repeat_rf;
    per_repeat_rf.reserve(static_cast<std::size_t>(cfg.repeats));
    for (int r = 0; r < cfg.repeats; ++r) {
        const std::uint64_t seed_r = rng::split(seed_d, static_cast<std::uint64_t>(r));
        CountSummary victim_counts;
        if (noiseless) {
            const CountSummary all = rydberg_counts(
                sample_shots(*joint_state, cfg.shots, seed_r, detection_of(cfg)));
            victim_counts.counts.assign(all.counts.begin(), all.counts.begin() + n_victim);
            victim_counts.shots = all.shots;
        } else {
            victim_counts =
                run_colocated(layout, cfg.shots, cfg.noise, seed_r,
                              static_cast<std::uint64_t>(distance_index) * cfg.repeats + r,
                              cfg.ctx)
                    .victim;
        }
        per_repeat_rf.push_back(relative_fidelity(victim_counts, expected).rf);
        for (std::size_t k = 0; k < pooled.counts.size(); ++k) {
            pooled.counts[k] += victim_counts.counts[k];
        }
        pooled.shots += victim_counts.shots;
    }

    std::vector<double> expected_total = expected;
    for (auto& e : expected_total) e *= static_cast<double>(cfg.repeats);

    double mean = 0.0;
    for (double rf : per_repeat_rf) mean += rf;
    mean /= static_cast<double>(cfg.repeats);
    double var = 0.0;
    for (double rf : per_repeat_rf) var += (rf - mean) * (rf - mean);
    const double std_err = cfg.repeats > 1
                               ? std::sqrt(var / (cfg.repeats - 1)) /
                                     std::sqrt(static_cast<double>(cfg.repeats))
                               : 0.0;

    return SweepPoint{relative_fidelity(pooled, expected_total).rf, std_err};
}

std::vector<Artifact> cmd_sweep(const ExperimentConfig& cfg) {
    validate(cfg.program, cfg.ctx.machine);
    const int n = static_cast<int>(cfg.distances_um.size());
    std::vector<SweepPoint> points(static_cast<std::size_t>(n));
    detail::parallel_for(n, [&](int j) {
        points[static_cast<std::size_t>(j)] = sweep_point(cfg, j);
    });

    std::string csv = csv_preamble(cfg, "ahs-sweep/1");
    csv += "distance_um,rf,rf_err\n";
    for (int j = 0; j < n; ++j) {
        csv += format_double(cfg.distances_um[static_cast<std::size_t>(j)]) + "," +
               format_double(points[static_cast<std::size_t>(j)].rf) + "," +
               format_double(points[static_cast<std::size_t>(j)].rf_err) + "\n";
    }
    return {Artifact{cfg.out_path, std::move(csv)}};
}

std::vector<Artifact> cmd_mtd(const ExperimentConfig& cfg) {
    validate(cfg.program, cfg.ctx.machine);
    const TenantLayout static_layout =
        layout_at_distance(cfg.program, *cfg.attacker, cfg.static_distance_um,
                           cfg.direction, cfg.ctx.machine);

    // No-defense arm: victim fixed at the worst-case placement, same batch
    // count and child seeds as the defended arm.
    const std::vector<double> expected_per_batch =
        expected_counts(cfg.program, cfg.shots, cfg.mtd.batches, cfg.seed, cfg.ctx);
    CountSummary static_counts{
        std::vector<long>(static_cast<std::size_t>(cfg.program.reg.size()), 0), 0};
    for (int b = 0; b < cfg.mtd.batches; ++b) {
        const CountSummary victim =
            run_colocated(static_layout, cfg.shots, cfg.noise,
                          rng::split(cfg.seed, static_cast<std::uint64_t>(b)),
                          static_cast<std::uint64_t>(b), cfg.ctx)
                .victim;
        for (std::size_t k = 0; k < static_counts.counts.size(); ++k) {
            static_counts.counts[k] += victim.counts[k];
        }
        static_counts.shots += victim.shots;
    }
    std::vector<double> expected_total = expected_per_batch;
    for (auto& e : expected_total) e *= static_cast<double>(cfg.mtd.batches);
    const FidelityReport static_report =
        relative_fidelity(static_counts, expected_total);

    const MtdOutcome defended = run_with_mtd(cfg.program, static_layout.attacker,
                                             cfg.mtd, cfg.shots, cfg.noise, cfg.seed,
                                             cfg.ctx);

    std::string csv = csv_preamble(cfg, "ahs-mtd/1");
    csv += "batch,dx_um,dy_um,rf\n";
    for (const auto& row : defended.rows) {
        csv += std::to_string(row.batch) + "," + format_double(row.dx_um) + "," +
               format_double(row.dy_um) + "," + format_double(row.rf) + "\n";
    }

    json summary;
    summary["schema"] = "ahs-mtd/1";
    summary["config"] = cfg.resolved;
    summary["program_hash"] = "fnv1a64:" + program_hash_hex(cfg.program);
    summary["attacker_hash"] = "fnv1a64:" + program_hash_hex(*cfg.attacker);
    summary["rf_static"] = static_report.rf;
    summary["rf_mtd"] = defended.report.rf;
    summary["total_shots"] = defended.report.shots;
    summary["expected"] = defended.report.expected;
    summary["static_counts"] = static_report.observed;
    summary["mtd_counts"] = defended.report.observed;
    summary["placement"] = cfg.mtd.move_after_measure
                               ? "moved before each batch and after measurement"
                               : "moved before each batch";

    return {Artifact{cfg.out_path + ".csv", std::move(csv)},
            Artifact{cfg.out_path + ".json", summary.dump(2) + "\n"}};
}

}  // namespace

std::vector<Artifact> run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.kind) {
        case ExperimentKind::kControl: return cmd_control(cfg);
        case ExperimentKind::kHeatmap: return cmd_heatmap(cfg);
        case ExperimentKind::kSweep: return cmd_sweep(cfg);
        case ExperimentKind::kMtd: return cmd_mtd(cfg);
    }
    throw ConfigError("unknown experiment kind");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Analog Hamiltonian simulation experiment harness"};
    app.require_subcommand(1);

    struct {
        std::string config_path;
        std::string out_path;
        std::uint64_t seed = 0;
        bool seed_set = false;
    } args;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", args.config_path, "experiment config JSON")
            ->required();
        sub->add_option("--out", args.out_path, "output path (mtd: path prefix)");
        sub->add_option("--seed", args.seed, "override the config seed")
            ->each([&](const std::string&) { args.seed_set = true; });
    };
    add_common(app.add_subcommand("control", "expected-counts control run"));
    add_common(app.add_subcommand("heatmap", "translation-grid fidelity heatmap"));
    add_common(app.add_subcommand("sweep", "fidelity vs tenant separation"));
    add_common(app.add_subcommand("mtd", "moving target defense comparison"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    const ExperimentKind kind = sub == "control"   ? ExperimentKind::kControl
                                : sub == "heatmap" ? ExperimentKind::kHeatmap
                                : sub == "sweep"   ? ExperimentKind::kSweep
                                                   : ExperimentKind::kMtd;

    try {
        std::ifstream in(args.config_path);
        if (!in) {
            throw ConfigError("cannot open config file: " + args.config_path);
        }
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ParseError(args.config_path + ": " + e.what());
        }
        if (args.seed_set) doc["seed"] = args.seed;
        if (!args.out_path.empty()) doc["out"] = args.out_path;

        const std::string config_dir =
            std::filesystem::path(args.config_path).parent_path().string();
        const ExperimentConfig cfg =
            parse_experiment_config(kind, doc, config_dir.empty() ? "." : config_dir);

        for (const Artifact& artifact : run_experiment(cfg)) {
            const std::filesystem::path path(artifact.path);
            if (path.has_parent_path()) {
                std::filesystem::create_directories(path.parent_path());
            }
            std::ofstream file(path);
            if (!file) {
                throw ConfigError("cannot write artifact: " + artifact.path);
            }
            file << artifact.content;
            out << "wrote " << artifact.path << "\n";
        }
        return 0;
    } catch (const NormDrift& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const DimensionMismatch& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const AhsError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "unexpected failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace ahs
