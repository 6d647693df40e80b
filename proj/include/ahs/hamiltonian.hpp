#pragma once

#include <span>
#include <vector>

#include "ahs/program.hpp"
#include "ahs/state.hpp"

// The time-dependent many-body Hamiltonian: global drive, site-patterned
// shift and van der Waals pair interactions. On basis states labeled by bits
// b_k (g = 0, r = 1):
//
//   diagonal:      sum_k [-delta_global(t) - delta_local(t) h_k] b_k
//                  + sum_{j<k} V_jk b_j b_k
//   off-diagonal:  (omega(t)/2) e^{i phi(t)} |g><r|_k + conjugate, per qubit
//
// with V_jk = c6 / d_jk^6. Application is matrix-free; the dense form exists
// as an oracle for tests and small systems.

namespace ahs {

struct PhysicsConstants {
    double c6 = 5.42e12;  // van der Waals coefficient, rad * um^6 / s
};

// Symmetric pair-interaction table, zero diagonal.
class VdwTable {
  public:
    VdwTable(int n, std::vector<double> row_major);

    double at(int j, int k) const { return v_[static_cast<std::size_t>(j) * n_ + k]; }
    int size() const { return n_; }

  private:
    int n_;
    std::vector<double> v_;
};

// V_jk = c6 / d_jk^6 for every pair. Throws DegenerateGeometry on coincident
// sites. Depends only on pairwise distances, never on absolute position.
VdwTable vdw_table(const Register& reg, const PhysicsConstants& constants = {});

// H(t) frozen at one time: the diagonal is precomputed once, off-diagonal
// drive terms are applied on the fly. apply() may be called concurrently on
// distinct output buffers.
class HamiltonianOperator {
  public:
    HamiltonianOperator(const AhsProgram& p, const VdwTable& table, double t_s);

    void apply(std::span<const Amplitude> in, std::span<Amplitude> out) const;

    std::size_t dim() const { return diagonal_.size(); }

  private:
    std::vector<double> diagonal_;
    Amplitude flip_gr_;  // (omega/2) e^{i phi}, the |g><r| coefficient
    int n_;
};

// H(t)|psi>. The result is not normalized (it is not a state).
std::vector<Amplitude> apply_hamiltonian(const AhsProgram& p, const VdwTable& table,
                                         double t_s, const QuantumState& state);

struct DenseMatrix {
    std::size_t dim = 0;
    std::vector<Amplitude> data;  // row-major

    Amplitude at(std::size_t row, std::size_t col) const { return data[row * dim + col]; }
    Amplitude& at(std::size_t row, std::size_t col) { return data[row * dim + col]; }
};

// Explicit 2^N x 2^N matrix equal to the matrix-free operator. Guarded to
// N <= 10 (throws TooLarge).
DenseMatrix build_dense(const AhsProgram& p, const VdwTable& table, double t_s);

}  // namespace ahs
