#pragma once

#include <optional>
#include <vector>

#include "ahs/errors.hpp"

// Program representation for analog Hamiltonian simulation: register
// geometry, piecewise-linear control waveforms, driving and shifting fields,
// validation against machine constraints, and program-level transforms.
// Everything here is an immutable value type; operations are pure functions,
// so values can be shared across threads without coordination.

namespace ahs {

struct Position {
    double x_um = 0.0;
    double y_um = 0.0;

    bool operator==(const Position&) const = default;
};

double distance_um(const Position& a, const Position& b);

struct MachineConstraints {
    double field_width_um = 75.0;
    double field_height_um = 76.0;
    double min_spacing_um = 4.0;
    int max_atoms = 256;
};

// Piecewise-linear waveform. Knot times are strictly increasing and start at
// 0; evaluation is linear interpolation between knots and an error outside
// [0, end_time]. A single-knot waveform is the degenerate zero-duration case.
class Waveform {
  public:
    Waveform() : times_s_{0.0}, values_{0.0} {}  // zero-duration, value 0
    Waveform(std::vector<double> times_s, std::vector<double> values);

    static Waveform constant(double value, double duration_s);

    double value_at(double t_s) const;

    double end_time_s() const { return times_s_.back(); }
    const std::vector<double>& times_s() const { return times_s_; }
    const std::vector<double>& values() const { return values_; }

    bool operator==(const Waveform&) const = default;

  private:
    std::vector<double> times_s_;
    std::vector<double> values_;
};

// Global drive (omega, phi, delta_global), applied uniformly to every qubit.
struct DrivingField {
    DrivingField() = default;  // zero fields, zero duration
    DrivingField(Waveform omega_wf, Waveform phi_wf, Waveform delta_global_wf);

    Waveform omega;         // Rabi angular frequency, rad/s, >= 0
    Waveform phi;           // phase, rad
    Waveform delta_global;  // global detuning, rad/s

    bool operator==(const DrivingField&) const = default;
};

DrivingField constant_drive(double omega, double phi, double delta_global,
                            double duration_s);

// Site-patterned frequency shift: H_shift,k = -delta_local(t) * h_k * n_k.
struct ShiftingField {
    ShiftingField(Waveform delta_local_wf, std::vector<double> pattern_h);

    Waveform delta_local;         // shift magnitude, rad/s, >= 0
    std::vector<double> pattern;  // per-site coefficients h_k, each in [0, 1]

    bool operator==(const ShiftingField&) const = default;
};

struct Register {
    std::vector<Position> sites;  // qubit k lives at sites[k]; order is stable

    int size() const { return static_cast<int>(sites.size()); }

    bool operator==(const Register&) const = default;
};

// Equilateral triangle: origin, origin + (side, 0), and the apex. The "top
// qubit" (shift target by convention) is index 2.
Register make_triangle_register(double side_um, Position origin);

struct AhsProgram {
    Register reg;
    DrivingField drive;
    std::optional<ShiftingField> shift;
    double duration_s = 0.0;

    bool operator==(const AhsProgram&) const = default;
};

// Checks geometry against constraints and waveform/duration consistency.
// Returns the program unchanged on success; throws SpacingViolation,
// OutOfField, TooManyAtoms or WaveformMismatch otherwise. Never mutates.
const AhsProgram& validate(const AhsProgram& p, const MachineConstraints& c);

// Shifts every site by (dx, dy); fields unchanged. Revalidate separately.
AhsProgram translate(const AhsProgram& p, double dx_um, double dy_um);

struct MergeResult {
    AhsProgram program;
    std::vector<int> index_map_a;  // qubit k of tenant a = merged index_map_a[k]
    std::vector<int> index_map_b;
};

// Joins two programs onto one register (a's sites first). Requires identical
// drives and durations (one global drive exists on the machine); shifting
// patterns concatenate with 0.0 filled for sites whose program had no shift.
// If both programs carry shifts, their delta_local waveforms must be equal.
MergeResult merge(const AhsProgram& a, const AhsProgram& b);

}  // namespace ahs
