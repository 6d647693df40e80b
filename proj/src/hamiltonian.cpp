#include "ahs/hamiltonian.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace ahs {

VdwTable::VdwTable(int n, std::vector<double> row_major)
    : n_(n), v_(std::move(row_major)) {
    if (n_ < 1 || v_.size() != static_cast<std::size_t>(n_) * n_) {
        throw DimensionMismatch("vdW table storage does not match its size");
    }
}

VdwTable vdw_table(const Register& reg, const PhysicsConstants& constants) {
    const int n = reg.size();
    std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            const double d = distance_um(reg.sites[j], reg.sites[k]);
            if (d == 0.0) {
                throw DegenerateGeometry("sites " + std::to_string(j) + " and " +
                                         std::to_string(k) + " coincide");
            }
            const double val = constants.c6 / std::pow(d, 6.0);
            v[static_cast<std::size_t>(j) * n + k] = val;
            v[static_cast<std::size_t>(k) * n + j] = val;
        }
    }
    return VdwTable(n, std::move(v));
}

HamiltonianOperator::HamiltonianOperator(const AhsProgram& p, const VdwTable& table,
                                         double t_s)
    : n_(p.reg.size()) {
    if (table.size() != n_) {
        throw DimensionMismatch("vdW table size does not match the register");
    }
    if (n_ > kMaxAtoms) {
        throw TooLarge("register of " + std::to_string(n_) + " atoms exceeds the " +
                       std::to_string(kMaxAtoms) + "-atom state-vector cap");
    }
    if (t_s < 0.0 || t_s > p.duration_s) {
        throw OutOfRange("Hamiltonian time outside the program duration");
    }

    const double omega = p.drive.omega.value_at(t_s);
    const double phi = p.drive.phi.value_at(t_s);
    const double delta_global = p.drive.delta_global.value_at(t_s);
    const double delta_local = p.shift ? p.shift->delta_local.value_at(t_s) : 0.0;
    flip_gr_ = (omega / 2.0) * Amplitude{std::cos(phi), std::sin(phi)};

    // Per-site diagonal coefficient: -delta_global - delta_local * h_k.
    std::vector<double> site_coeff(static_cast<std::size_t>(n_));
    for (int k = 0; k < n_; ++k) {
        const double h = p.shift ? p.shift->pattern[static_cast<std::size_t>(k)] : 0.0;
        site_coeff[static_cast<std::size_t>(k)] = -delta_global - delta_local * h;
    }

    const std::size_t dim = std::size_t{1} << n_;
    diagonal_.assign(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        double acc = 0.0;
        for (int k = 0; k < n_; ++k) {
            if (!((i >> k) & 1u)) continue;
            acc += site_coeff[static_cast<std::size_t>(k)];
            for (int j = 0; j < k; ++j) {
                if ((i >> j) & 1u) acc += table.at(j, k);
            }
        }
        diagonal_[i] = acc;
    }
}

void HamiltonianOperator::apply(std::span<const Amplitude> in,
                                std::span<Amplitude> out) const {
    if (in.size() != dim() || out.size() != dim()) {
        throw DimensionMismatch("state dimension does not match the Hamiltonian");
    }
    const Amplitude flip_rg = std::conj(flip_gr_);
    for (std::size_t i = 0; i < in.size(); ++i) {
        Amplitude acc = diagonal_[i] * in[i];
        for (int k = 0; k < n_; ++k) {
            const std::size_t mask = std::size_t{1} << k;
            acc += ((i & mask) ? flip_rg : flip_gr_) * in[i ^ mask];
        }
        out[i] = acc;
    }
}

std::vector<Amplitude> apply_hamiltonian(const AhsProgram& p, const VdwTable& table,
                                         double t_s, const QuantumState& state) {
    if (state.n_atoms() != p.reg.size()) {
        throw DimensionMismatch("state covers " + std::to_string(state.n_atoms()) +
                                " atoms, program has " + std::to_string(p.reg.size()));
    }
    const HamiltonianOperator h(p, table, t_s);
    std::vector<Amplitude> out(state.dim());
    h.apply(state.amplitudes(), out);
    return out;
}

DenseMatrix build_dense(const AhsProgram& p, const VdwTable& table, double t_s) {
    const int n = p.reg.size();
    if (n > 10) {
        throw TooLarge("dense Hamiltonian guarded to 10 atoms, got " + std::to_string(n));
    }
    if (table.size() != n) {
        throw DimensionMismatch("vdW table size does not match the register");
    }
    if (t_s < 0.0 || t_s > p.duration_s) {
        throw OutOfRange("Hamiltonian time outside the program duration");
    }

    const double omega = p.drive.omega.value_at(t_s);
    const double phi = p.drive.phi.value_at(t_s);
    const double delta_global = p.drive.delta_global.value_at(t_s);
    const double delta_local = p.shift ? p.shift->delta_local.value_at(t_s) : 0.0;
    const Amplitude flip_gr = (omega / 2.0) * Amplitude{std::cos(phi), std::sin(phi)};

    const std::size_t dim = std::size_t{1} << n;
    DenseMatrix m{dim, std::vector<Amplitude>(dim * dim, Amplitude{0.0, 0.0})};
    for (std::size_t i = 0; i < dim; ++i) {
        double diag = 0.0;
        for (int k = 0; k < n; ++k) {
            if (!((i >> k) & 1u)) continue;
            const double h = p.shift ? p.shift->pattern[static_cast<std::size_t>(k)] : 0.0;
            diag += -delta_global - delta_local * h;
            for (int j = 0; j < k; ++j) {
                if ((i >> j) & 1u) diag += table.at(j, k);
            }
        }
        m.at(i, i) = diag;
        for (int k = 0; k < n; ++k) {
            const std::size_t mask = std::size_t{1} << k;
            if ((i & mask) == 0) {
                m.at(i, i | mask) = flip_gr;          // <...g...|H|...r...>
                m.at(i | mask, i) = std::conj(flip_gr);
            }
        }
    }
    return m;
}

}  // namespace ahs
