#pragma once

#include <complex>
#include <vector>

#include "ahs/errors.hpp"

// State-vector type shared by the Hamiltonian and evolution layers. Qubit k
// is bit k of the basis-state index (little-endian); bit value 1 means the
// Rydberg state. All count extraction depends on this ordering.

namespace ahs {

using Amplitude = std::complex<double>;

// Dense state vectors are capped here; the experiments need N <= 6.
inline constexpr int kMaxAtoms = 20;

class QuantumState {
  public:
    // Takes ownership of the amplitudes; requires a power-of-two dimension
    // and unit norm within 1e-8.
    explicit QuantumState(std::vector<Amplitude> amplitudes);

    static QuantumState ground(int n_atoms);

    int n_atoms() const { return n_atoms_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<Amplitude>& amplitudes() const { return amps_; }
    double norm() const;

  private:
    std::vector<Amplitude> amps_;
    int n_atoms_ = 0;
};

// Amplitude 1 on the all-ground basis state.
QuantumState ground_state(int n_atoms);

}  // namespace ahs
