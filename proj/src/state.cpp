#include "ahs/state.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace ahs {

namespace {

int atoms_for_dim(std::size_t dim) {
    int n = 0;
    std::size_t d = dim;
    while (d > 1) {
        if (d % 2 != 0) {
            throw DimensionMismatch("state dimension must be a power of two");
        }
        d /= 2;
        ++n;
    }
    if (n < 1 || n > kMaxAtoms) {
        throw TooLarge("state covers " + std::to_string(n) +
                       " atoms, supported range is 1.." + std::to_string(kMaxAtoms));
    }
    return n;
}

}  // namespace

QuantumState::QuantumState(std::vector<Amplitude> amplitudes)
    : amps_(std::move(amplitudes)) {
    n_atoms_ = atoms_for_dim(amps_.size());
    const double n = norm();
    if (std::abs(n - 1.0) > 1e-8) {
        throw NormDrift("state norm is " + std::to_string(n) + ", expected 1");
    }
}

QuantumState QuantumState::ground(int n_atoms) {
    if (n_atoms < 1 || n_atoms > kMaxAtoms) {
        throw TooLarge("atom count " + std::to_string(n_atoms) +
                       " outside supported range 1.." + std::to_string(kMaxAtoms));
    }
    std::vector<Amplitude> amps(std::size_t{1} << n_atoms, Amplitude{0.0, 0.0});
    amps[0] = Amplitude{1.0, 0.0};
    return QuantumState(std::move(amps));
}

double QuantumState::norm() const {
    double sum = 0.0;
    for (const auto& a : amps_) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

QuantumState ground_state(int n_atoms) { return QuantumState::ground(n_atoms); }

}  // namespace ahs
