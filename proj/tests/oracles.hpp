#pragma once

#include <complex>
#include <vector>

#include "ahs/program.hpp"

// Test-only oracles, deliberately independent of the library's operator and
// waveform code paths:
//  - a dense Hamiltonian assembled from explicit 2x2 matrices through
//    Kronecker products,
//  - closed-form Rabi probabilities,
//  - a driver-free linear interpolation for waveform lookups.

namespace ahs::testing {

using Cd = std::complex<double>;

struct Dense {
    std::size_t dim = 0;
    std::vector<Cd> data;  // row-major

    Cd at(std::size_t r, std::size_t c) const { return data[r * dim + c]; }
    Cd& at(std::size_t r, std::size_t c) { return data[r * dim + c]; }
};

Dense kron(const Dense& high, const Dense& low);

// H = sum_k (Om/2)(cos phi X_k - sin phi Y_k) - sum_k (Dg + Dl h_k) n_k
//     + sum_{j<k} (c6 / d_jk^6) n_j n_k, evaluated at time t.
Dense kron_hamiltonian(const AhsProgram& p, double c6, double t_s);

double lerp_waveform(const std::vector<double>& times, const std::vector<double>& values,
                     double t);

// P(r) for a resonant / detuned constant drive starting from |g>.
double resonant_rabi_pr(double omega, double t);
double detuned_rabi_pr(double omega, double delta, double t);

}  // namespace ahs::testing
