#include "ahs/noise.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "ahs/rng.hpp"

namespace ahs {

namespace {

constexpr int kMaxJitterResamples = 100;

bool geometry_ok(const Register& reg, const MachineConstraints& c) {
    for (const auto& s : reg.sites) {
        if (s.x_um < 0.0 || s.x_um > c.field_width_um || s.y_um < 0.0 ||
            s.y_um > c.field_height_um) {
            return false;
        }
    }
    for (std::size_t j = 0; j < reg.sites.size(); ++j) {
        for (std::size_t k = j + 1; k < reg.sites.size(); ++k) {
            if (distance_um(reg.sites[j], reg.sites[k]) < c.min_spacing_um) {
                return false;
            }
        }
    }
    return true;
}

Waveform scale_values(const Waveform& w, double factor) {
    std::vector<double> values = w.values();
    for (auto& v : values) v *= factor;
    return Waveform(w.times_s(), std::move(values));
}

Waveform offset_values(const Waveform& w, double offset) {
    std::vector<double> values = w.values();
    for (auto& v : values) v += offset;
    return Waveform(w.times_s(), std::move(values));
}

}  // namespace

SiteNoiseField::SiteNoiseField(int nx, int ny, double width_um, double height_um,
                               std::vector<double> delta_cells,
                               std::vector<double> omega_cells)
    : nx_(nx), ny_(ny), width_um_(width_um), height_um_(height_um),
      delta_cells_(std::move(delta_cells)), omega_cells_(std::move(omega_cells)) {
    const auto expected = static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
    if (nx_ < 1 || ny_ < 1 || delta_cells_.size() != expected ||
        omega_cells_.size() != expected) {
        throw AhsError("site field grid storage does not match its dimensions");
    }
}

double SiteNoiseField::cell_value(const std::vector<double>& cells, double x_um,
                                  double y_um) const {
    // Cell centers sit at ((i + 0.5) * width / nx, (j + 0.5) * height / ny);
    // interpolation clamps at the edges.
    const double fx = std::clamp(x_um / width_um_ * nx_ - 0.5, 0.0,
                                 static_cast<double>(nx_ - 1));
    const double fy = std::clamp(y_um / height_um_ * ny_ - 0.5, 0.0,
                                 static_cast<double>(ny_ - 1));
    const int x0 = static_cast<int>(fx);
    const int y0 = static_cast<int>(fy);
    const int x1 = std::min(x0 + 1, nx_ - 1);
    const int y1 = std::min(y0 + 1, ny_ - 1);
    const double wx = fx - x0;
    const double wy = fy - y0;
    const auto at = [&](int i, int j) {
        return cells[static_cast<std::size_t>(j) * nx_ + i];
    };
    return (1 - wx) * (1 - wy) * at(x0, y0) + wx * (1 - wy) * at(x1, y0) +
           (1 - wx) * wy * at(x0, y1) + wx * wy * at(x1, y1);
}

SiteNoiseField::LocalValues SiteNoiseField::at(double x_um, double y_um) const {
    return LocalValues{cell_value(delta_cells_, x_um, y_um),
                       1.0 + cell_value(omega_cells_, x_um, y_um)};
}

SiteNoiseField sample_site_field(const SiteFieldSpec& spec,
                                 const MachineConstraints& constraints,
                                 std::uint64_t seed) {
    if (!(spec.correlation_length_um > 0.0)) {
        throw AhsError("site field correlation length must be positive");
    }
    if (spec.nx < 1 || spec.ny < 1) {
        throw AhsError("site field grid must have at least one cell per axis");
    }
    const std::size_t cells =
        static_cast<std::size_t>(spec.nx) * static_cast<std::size_t>(spec.ny);

    rng::Stream stream(seed);
    std::vector<double> raw_delta(cells), raw_omega(cells);
    for (std::size_t i = 0; i < cells; ++i) raw_delta[i] = stream.gaussian();
    for (std::size_t i = 0; i < cells; ++i) raw_omega[i] = stream.gaussian();

    // Normalized Gaussian kernel over cell centers, width = correlation length.
    const double cell_w = constraints.field_width_um / spec.nx;
    const double cell_h = constraints.field_height_um / spec.ny;
    const auto smooth = [&](const std::vector<double>& src, double sigma_out) {
        std::vector<double> dst(cells, 0.0);
        if (sigma_out == 0.0) return dst;
        for (int j = 0; j < spec.ny; ++j) {
            for (int i = 0; i < spec.nx; ++i) {
                double acc = 0.0, wsum = 0.0;
                for (int j2 = 0; j2 < spec.ny; ++j2) {
                    for (int i2 = 0; i2 < spec.nx; ++i2) {
                        const double dx = (i2 - i) * cell_w;
                        const double dy = (j2 - j) * cell_h;
                        const double w = std::exp(-(dx * dx + dy * dy) /
                                                  (2.0 * spec.correlation_length_um *
                                                   spec.correlation_length_um));
                        acc += w * src[static_cast<std::size_t>(j2) * spec.nx + i2];
                        wsum += w;
                    }
                }
                dst[static_cast<std::size_t>(j) * spec.nx + i] = sigma_out * acc / wsum;
            }
        }
        return dst;
    };

    return SiteNoiseField(spec.nx, spec.ny, constraints.field_width_um,
                          constraints.field_height_um,
                          smooth(raw_delta, spec.delta_sigma),
                          smooth(raw_omega, spec.omega_rel_sigma));
}

AhsProgram perturb(const AhsProgram& p, const NoiseModel& model,
                   std::uint64_t run_index, const MachineConstraints& constraints) {
    if (model.is_zero()) {
        return p;
    }
    rng::Stream stream(rng::split(model.seed, run_index));

    Register jittered = p.reg;
    if (model.pos_jitter_sigma_um > 0.0) {
        bool ok = false;
        for (int attempt = 0; attempt < kMaxJitterResamples && !ok; ++attempt) {
            jittered = p.reg;
            for (auto& s : jittered.sites) {
                s.x_um += model.pos_jitter_sigma_um * stream.gaussian();
                s.y_um += model.pos_jitter_sigma_um * stream.gaussian();
            }
            ok = geometry_ok(jittered, constraints);
        }
        if (!ok) {
            throw JitterTooLarge("position jitter violated spacing or field bounds " +
                                 std::to_string(kMaxJitterResamples) + " times in a row");
        }
    }

    double omega_factor = 1.0;
    double delta_offset = 0.0;
    if (model.omega_rel_sigma > 0.0) {
        omega_factor *= 1.0 + model.omega_rel_sigma * stream.gaussian();
    }
    if (model.delta_offset_sigma > 0.0) {
        delta_offset += model.delta_offset_sigma * stream.gaussian();
    }
    if (model.site_field) {
        // The drive is global per program, so the field is sampled once at
        // the (perturbed) register centroid.
        double cx = 0.0, cy = 0.0;
        for (const auto& s : jittered.sites) {
            cx += s.x_um;
            cy += s.y_um;
        }
        cx /= jittered.size();
        cy /= jittered.size();
        const auto local = model.site_field->at(cx, cy);
        omega_factor *= local.omega_factor;
        delta_offset += local.delta_offset;
    }
    if (omega_factor < 0.0) {
        omega_factor = 0.0;  // a fluctuation cannot drive the amplitude negative
    }

    AhsProgram out = p;
    out.reg = std::move(jittered);
    out.drive = DrivingField(scale_values(p.drive.omega, omega_factor), p.drive.phi,
                             offset_values(p.drive.delta_global, delta_offset));
    return out;
}

}  // namespace ahs
