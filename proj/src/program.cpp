#include "ahs/program.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace ahs {

namespace {

// Spacing comparisons tolerate this much absolute slack so that analytically
// placed layouts landing exactly on the limit do not fail on rounding.
constexpr double kSpacingSlackUm = 1e-9;

std::string pos_str(const Position& p) {
    return "(" + std::to_string(p.x_um) + ", " + std::to_string(p.y_um) + ")";
}

}  // namespace

double distance_um(const Position& a, const Position& b) {
    return std::hypot(a.x_um - b.x_um, a.y_um - b.y_um);
}

Waveform::Waveform(std::vector<double> times_s, std::vector<double> values)
    : times_s_(std::move(times_s)), values_(std::move(values)) {
    if (times_s_.empty() || times_s_.size() != values_.size()) {
        throw AhsError("waveform needs matching, non-empty knot times and values");
    }
    if (times_s_.front() != 0.0) {
        throw AhsError("waveform must start at t = 0");
    }
    for (std::size_t i = 0; i < times_s_.size(); ++i) {
        if (!std::isfinite(times_s_[i]) || !std::isfinite(values_[i])) {
            throw AhsError("waveform knots must be finite");
        }
        if (i > 0 && times_s_[i] <= times_s_[i - 1]) {
            throw AhsError("waveform knot times must be strictly increasing");
        }
    }
}

Waveform Waveform::constant(double value, double duration_s) {
    if (duration_s == 0.0) {
        return Waveform({0.0}, {value});
    }
    return Waveform({0.0, duration_s}, {value, value});
}

double Waveform::value_at(double t_s) const {
    if (t_s < 0.0 || t_s > end_time_s()) {
        throw OutOfRange("waveform evaluated at t = " + std::to_string(t_s) +
                         " outside [0, " + std::to_string(end_time_s()) + "]");
    }
    const auto it = std::lower_bound(times_s_.begin(), times_s_.end(), t_s);
    const std::size_t hi = static_cast<std::size_t>(it - times_s_.begin());
    if (hi < times_s_.size() && times_s_[hi] == t_s) {
        return values_[hi];  // exact at knots
    }
    const std::size_t lo = hi - 1;
    const double w = (t_s - times_s_[lo]) / (times_s_[hi] - times_s_[lo]);
    return values_[lo] + w * (values_[hi] - values_[lo]);
}

DrivingField::DrivingField(Waveform omega_wf, Waveform phi_wf, Waveform delta_global_wf)
    : omega(std::move(omega_wf)), phi(std::move(phi_wf)),
      delta_global(std::move(delta_global_wf)) {
    if (omega.end_time_s() != phi.end_time_s() ||
        omega.end_time_s() != delta_global.end_time_s()) {
        throw WaveformMismatch("drive waveforms must share one end time");
    }
    for (double v : omega.values()) {
        if (v < 0.0) {
            throw AhsError("omega values must be nonnegative");
        }
    }
}

DrivingField constant_drive(double omega, double phi, double delta_global,
                            double duration_s) {
    return DrivingField(Waveform::constant(omega, duration_s),
                        Waveform::constant(phi, duration_s),
                        Waveform::constant(delta_global, duration_s));
}

ShiftingField::ShiftingField(Waveform delta_local_wf, std::vector<double> pattern_h)
    : delta_local(std::move(delta_local_wf)), pattern(std::move(pattern_h)) {
    for (double v : delta_local.values()) {
        if (v < 0.0) {
            throw AhsError("delta_local values must be nonnegative");
        }
    }
    for (double h : pattern) {
        if (!(h >= 0.0 && h <= 1.0)) {
            throw AhsError("shift pattern coefficients must lie in [0, 1]");
        }
    }
}

Register make_triangle_register(double side_um, Position origin) {
    if (!(side_um > 0.0)) {
        throw AhsError("triangle side must be positive");
    }
    const double h = side_um * std::sqrt(3.0) / 2.0;
    return Register{{origin,
                     {origin.x_um + side_um, origin.y_um},
                     {origin.x_um + side_um / 2.0, origin.y_um + h}}};
}

const AhsProgram& validate(const AhsProgram& p, const MachineConstraints& c) {
    const auto& sites = p.reg.sites;
    if (sites.empty()) {
        throw TooManyAtoms("register needs at least one site");
    }
    if (p.reg.size() > c.max_atoms) {
        throw TooManyAtoms("register has " + std::to_string(p.reg.size()) +
                           " atoms, machine allows " + std::to_string(c.max_atoms));
    }
    for (const auto& s : sites) {
        if (!std::isfinite(s.x_um) || !std::isfinite(s.y_um) ||
            s.x_um < 0.0 || s.x_um > c.field_width_um ||
            s.y_um < 0.0 || s.y_um > c.field_height_um) {
            throw OutOfField("site " + pos_str(s) + " outside the " +
                             std::to_string(c.field_width_um) + " x " +
                             std::to_string(c.field_height_um) + " um field");
        }
    }
    for (std::size_t j = 0; j < sites.size(); ++j) {
        for (std::size_t k = j + 1; k < sites.size(); ++k) {
            const double d = distance_um(sites[j], sites[k]);
            if (d < c.min_spacing_um - kSpacingSlackUm) {
                throw SpacingViolation("sites " + std::to_string(j) + " and " +
                                       std::to_string(k) + " are " + std::to_string(d) +
                                       " um apart, minimum is " +
                                       std::to_string(c.min_spacing_um));
            }
        }
    }
    if (p.duration_s < 0.0 || !std::isfinite(p.duration_s)) {
        throw WaveformMismatch("program duration must be finite and nonnegative");
    }
    if (p.drive.omega.end_time_s() != p.duration_s) {
        throw WaveformMismatch("drive waveforms end at " +
                               std::to_string(p.drive.omega.end_time_s()) +
                               " s, program duration is " + std::to_string(p.duration_s));
    }
    if (p.shift) {
        if (p.shift->delta_local.end_time_s() != p.duration_s) {
            throw WaveformMismatch("shift waveform end time differs from program duration");
        }
        if (static_cast<int>(p.shift->pattern.size()) != p.reg.size()) {
            throw WaveformMismatch("shift pattern length " +
                                   std::to_string(p.shift->pattern.size()) +
                                   " does not match register size " +
                                   std::to_string(p.reg.size()));
        }
    }
    return p;
}

AhsProgram translate(const AhsProgram& p, double dx_um, double dy_um) {
    AhsProgram out = p;
    for (auto& s : out.reg.sites) {
        s.x_um += dx_um;
        s.y_um += dy_um;
    }
    return out;
}

MergeResult merge(const AhsProgram& a, const AhsProgram& b) {
    if (a.duration_s != b.duration_s) {
        throw DurationMismatch("programs have durations " + std::to_string(a.duration_s) +
                               " s and " + std::to_string(b.duration_s) + " s");
    }
    if (!(a.drive == b.drive)) {
        throw DriveMismatch("programs must share one global drive, knot for knot");
    }

    AhsProgram merged{Register{}, a.drive, std::nullopt, a.duration_s};
    merged.reg.sites = a.reg.sites;
    merged.reg.sites.insert(merged.reg.sites.end(), b.reg.sites.begin(),
                            b.reg.sites.end());

    const int na = a.reg.size();
    const int nb = b.reg.size();
    if (a.shift || b.shift) {
        if (a.shift && b.shift && !(a.shift->delta_local == b.shift->delta_local)) {
            throw ShiftMismatch(
                "both programs carry shifting fields with different delta_local "
                "waveforms; one local-detuning modulation exists per machine");
        }
        const Waveform& delta_local =
            a.shift ? a.shift->delta_local : b.shift->delta_local;
        std::vector<double> pattern(static_cast<std::size_t>(na + nb), 0.0);
        if (a.shift) {
            std::copy(a.shift->pattern.begin(), a.shift->pattern.end(), pattern.begin());
        }
        if (b.shift) {
            std::copy(b.shift->pattern.begin(), b.shift->pattern.end(),
                      pattern.begin() + na);
        }
        merged.shift.emplace(delta_local, std::move(pattern));
    }

    MergeResult result{std::move(merged), {}, {}};
    result.index_map_a.resize(na);
    result.index_map_b.resize(nb);
    for (int i = 0; i < na; ++i) result.index_map_a[i] = i;
    for (int i = 0; i < nb; ++i) result.index_map_b[i] = na + i;
    return result;
}

}  // namespace ahs
