#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ahs/measurement.hpp"
#include "ahs/program.hpp"

// Seeded parametric noise emulating hardware imperfections: per-run position
// jitter, Rabi-amplitude and detuning fluctuations, detection errors and a
// position-dependent site field. Magnitudes are configuration with defaults
// of zero; re-running with a new seed emulates session-to-session drift.

namespace ahs {

struct SiteFieldSpec {
    int nx = 8;
    int ny = 8;
    double delta_sigma = 0.0;      // rad/s, additive detuning channel
    double omega_rel_sigma = 0.0;  // unitless, multiplicative Rabi channel
    double correlation_length_um = 10.0;
};

// Gaussian random field realized on a grid over the machine field of view;
// values between cell centers are bilinear. Immutable once sampled.
class SiteNoiseField {
  public:
    struct LocalValues {
        double delta_offset = 0.0;  // rad/s
        double omega_factor = 1.0;  // multiplies omega
    };

    SiteNoiseField(int nx, int ny, double width_um, double height_um,
                   std::vector<double> delta_cells, std::vector<double> omega_cells);

    LocalValues at(double x_um, double y_um) const;

    int nx() const { return nx_; }
    int ny() const { return ny_; }

  private:
    double cell_value(const std::vector<double>& cells, double x_um, double y_um) const;

    int nx_;
    int ny_;
    double width_um_;
    double height_um_;
    std::vector<double> delta_cells_;  // row-major, nx * ny
    std::vector<double> omega_cells_;
};

// Independent Gaussian cell draws smoothed by a normalized kernel of the
// spec's correlation length. Deterministic per seed.
SiteNoiseField sample_site_field(const SiteFieldSpec& spec,
                                 const MachineConstraints& constraints,
                                 std::uint64_t seed);

struct NoiseModel {
    double pos_jitter_sigma_um = 0.0;  // per-site Gaussian displacement per run
    double omega_rel_sigma = 0.0;      // multiplicative Rabi fluctuation per run
    double delta_offset_sigma = 0.0;   // additive global detuning offset, rad/s
    DetectionError detection;
    std::optional<SiteNoiseField> site_field;
    std::uint64_t seed = 0;

    bool is_zero() const {
        return pos_jitter_sigma_um == 0.0 && omega_rel_sigma == 0.0 &&
               delta_offset_sigma == 0.0 && !site_field.has_value();
    }
};

// One noisy realization of a program, deterministic given (model.seed,
// run_index): sites displaced by i.i.d. Gaussians, omega scaled by the run
// fluctuation and the site field at the register centroid, delta_global
// shifted additively. Displacements that break spacing or leave the field
// are resampled up to 100 times, then JitterTooLarge.
AhsProgram perturb(const AhsProgram& p, const NoiseModel& model,
                   std::uint64_t run_index, const MachineConstraints& constraints = {});

}  // namespace ahs
