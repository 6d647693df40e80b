#pragma once

#include <cmath>
#include <vector>

#include "ahs/program.hpp"
#include "ahs/rng.hpp"
#include "ahs/state.hpp"

// Random valid programs and states for property tests: sites spaced >= 4 um
// inside the field, random piecewise-linear waveforms, optional shift.

namespace ahs::testing {

inline AhsProgram random_program(rng::Stream& stream, int max_atoms = 4,
                                 bool allow_shift = true) {
    const int n = 1 + static_cast<int>(stream.uniform() * max_atoms);
    Register reg;
    while (reg.size() < n) {
        const Position candidate{5.0 + stream.uniform() * 40.0,
                                 5.0 + stream.uniform() * 40.0};
        bool ok = true;
        for (const auto& s : reg.sites) {
            if (distance_um(s, candidate) < 4.0) {
                ok = false;
                break;
            }
        }
        if (ok) reg.sites.push_back(candidate);
    }

    const double duration = 2e-7 + stream.uniform() * 4e-7;
    const int knots = 2 + static_cast<int>(stream.uniform() * 3);
    std::vector<double> times{0.0};
    for (int i = 1; i < knots - 1; ++i) {
        times.push_back(duration * (i + stream.uniform() * 0.5) / knots);
    }
    times.push_back(duration);

    const auto wf = [&](double lo, double hi) {
        std::vector<double> values;
        for (std::size_t i = 0; i < times.size(); ++i) {
            values.push_back(lo + stream.uniform() * (hi - lo));
        }
        return Waveform(times, values);
    };

    AhsProgram p{reg, DrivingField(wf(0.0, 5e6), wf(-3.1, 3.1), wf(-5e6, 5e6)),
                 std::nullopt, duration};
    if (allow_shift && stream.uniform() < 0.5) {
        std::vector<double> pattern;
        for (int i = 0; i < n; ++i) pattern.push_back(stream.uniform());
        p.shift.emplace(wf(0.0, 5e7), pattern);
    }
    return p;
}

inline QuantumState random_state(rng::Stream& stream, int n_atoms) {
    std::vector<Amplitude> amps(std::size_t{1} << n_atoms);
    double norm2 = 0.0;
    for (auto& a : amps) {
        a = Amplitude{stream.gaussian(), stream.gaussian()};
        norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= inv;
    return QuantumState(std::move(amps));
}

}  // namespace ahs::testing
