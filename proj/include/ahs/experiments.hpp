#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ahs/colocation.hpp"

// Experiment harness: the control run, the translation heatmap, the
// separation sweep and the MTD comparison, each driven by a JSON config and
// emitting machine-readable artifacts (CSV / JSON, documented in
// docs/formats.md). Every artifact embeds the resolved config and a content
// hash of the input program, and is byte-identical across reruns of the same
// config + seed.

namespace ahs {

enum class ExperimentKind {
    kControl,
    kHeatmap,
    kSweep,
    kMtd,
};

struct GridSpec {
    double origin_x_um = 0.0;  // translation offset of cell (0, 0)
    double origin_y_um = 0.0;
    int nx = 4;
    int ny = 5;
    double step_um = 10.0;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::kControl;
    AhsProgram program;                  // the control / victim program
    std::optional<AhsProgram> attacker;  // sweep and mtd
    int shots = 1000;
    int repeats = 20;
    std::uint64_t seed = 0;
    std::optional<NoiseModel> noise;
    RunContext ctx;
    GridSpec grid;                    // heatmap
    std::vector<double> distances_um;  // sweep
    Vec2 direction{1.0, 0.0};          // sweep / mtd placement direction
    double static_distance_um = 5.0;   // mtd no-defense placement
    MtdPolicy mtd;
    std::string out_path;      // mtd treats this as a prefix (.csv/.json)
    nlohmann::json resolved;   // canonical echo embedded in artifacts
};

// Parses and resolves a config document for the given experiment kind.
// `config_dir` anchors relative {"file": ...} program references. Throws
// ConfigError / ParseError on invalid input.
ExperimentConfig parse_experiment_config(ExperimentKind kind,
                                         const nlohmann::json& doc,
                                         const std::string& config_dir = ".");

struct Artifact {
    std::string path;
    std::string content;
};

// Runs one experiment and returns its artifacts (not yet written to disk).
std::vector<Artifact> run_experiment(const ExperimentConfig& cfg);

// CLI entry: `ahs control|heatmap|sweep|mtd --config <file> [--seed N]
// [--out <path>]`. Writes artifacts, prints a summary line per artifact.
// Exit codes: 0 ok, 2 configuration/validation error, 3 numeric failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ahs
