#include "ahs/evolution.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace ahs {

namespace {

constexpr int kMaxTaylorTerms = 300;

double vec_norm(const std::vector<Amplitude>& v) {
    double sum = 0.0;
    for (const auto& a : v) sum += std::norm(a);
    return std::sqrt(sum);
}

// psi <- exp(-i h H) psi, truncated when the next term drops below tol.
void taylor_exp_step(const HamiltonianOperator& h_op, double h, double tol,
                     std::vector<Amplitude>& psi, std::vector<Amplitude>& term,
                     std::vector<Amplitude>& scratch) {
    term = psi;
    const Amplitude factor{0.0, -h};
    for (int n = 1; n <= kMaxTaylorTerms; ++n) {
        h_op.apply(term, scratch);
        const Amplitude scale = factor / static_cast<double>(n);
        for (std::size_t i = 0; i < term.size(); ++i) {
            term[i] = scale * scratch[i];
            psi[i] += term[i];
        }
        const double tnorm = vec_norm(term);
        if (!std::isfinite(tnorm)) {
            throw NormDrift("propagator series diverged; dt too large for this program");
        }
        if (tnorm < tol) return;
    }
    throw NormDrift("propagator series did not converge within " +
                    std::to_string(kMaxTaylorTerms) + " terms; dt too large");
}

void rk4_step(const AhsProgram& p, const VdwTable& table, double t, double h,
              std::vector<Amplitude>& psi) {
    const std::size_t dim = psi.size();
    const HamiltonianOperator h0(p, table, t);
    const HamiltonianOperator hm(p, table, t + h / 2.0);
    const HamiltonianOperator h1(p, table, t + h);

    const Amplitude mi{0.0, -1.0};
    std::vector<Amplitude> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

    h0.apply(psi, k1);
    for (std::size_t i = 0; i < dim; ++i) { k1[i] *= mi; tmp[i] = psi[i] + (h / 2.0) * k1[i]; }
    hm.apply(tmp, k2);
    for (std::size_t i = 0; i < dim; ++i) { k2[i] *= mi; tmp[i] = psi[i] + (h / 2.0) * k2[i]; }
    hm.apply(tmp, k3);
    for (std::size_t i = 0; i < dim; ++i) { k3[i] *= mi; tmp[i] = psi[i] + h * k3[i]; }
    h1.apply(tmp, k4);
    for (std::size_t i = 0; i < dim; ++i) {
        k4[i] *= mi;
        psi[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

}  // namespace

QuantumState evolve(const AhsProgram& p, const QuantumState& initial,
                    const IntegratorConfig& cfg, const PhysicsConstants& constants) {
    if (initial.n_atoms() != p.reg.size()) {
        throw DimensionMismatch("state covers " + std::to_string(initial.n_atoms()) +
                                " atoms, program has " + std::to_string(p.reg.size()));
    }
    if (!(cfg.dt_s > 0.0)) {
        throw AhsError("integrator dt must be positive");
    }
    if (!(cfg.taylor_tol > 0.0 && cfg.taylor_tol <= 1e-6)) {
        throw AhsError("taylor_tol must lie in (0, 1e-6]");
    }
    if (p.duration_s == 0.0) {
        return initial;
    }

    const VdwTable table = vdw_table(p.reg, constants);
    std::vector<Amplitude> psi = initial.amplitudes();
    std::vector<Amplitude> term(psi.size()), scratch(psi.size());

    const double T = p.duration_s;
    const auto n_steps =
        static_cast<std::size_t>(std::ceil(T / cfg.dt_s - 1e-12));
    for (std::size_t s = 0; s < n_steps; ++s) {
        const double t0 = static_cast<double>(s) * cfg.dt_s;
        const double t1 = (s + 1 == n_steps) ? T : t0 + cfg.dt_s;
        const double h = t1 - t0;
        if (cfg.method == IntegratorMethod::kMidpointExponential) {
            const HamiltonianOperator h_mid(p, table, t0 + h / 2.0);
            taylor_exp_step(h_mid, h, cfg.taylor_tol, psi, term, scratch);
        } else {
            rk4_step(p, table, t0, h, psi);
        }
    }

    const double drift = std::abs(vec_norm(psi) - 1.0);
    if (!(drift < 1e-8)) {
        throw NormDrift("final norm drifted by " + std::to_string(drift) +
                        "; integration unstable (dt too large)");
    }
    return QuantumState(std::move(psi));
}

ConvergenceReport convergence_check(const AhsProgram& p, const QuantumState& initial,
                                    const IntegratorConfig& cfg,
                                    const PhysicsConstants& constants) {
    IntegratorConfig half = cfg;
    half.dt_s = cfg.dt_s / 2.0;
    const QuantumState coarse = evolve(p, initial, cfg, constants);
    const QuantumState fine = evolve(p, initial, half, constants);

    double max_diff = 0.0;
    for (std::size_t i = 0; i < coarse.dim(); ++i) {
        const double d = std::abs(std::norm(coarse.amplitudes()[i]) -
                                  std::norm(fine.amplitudes()[i]));
        max_diff = std::max(max_diff, d);
    }
    return ConvergenceReport{cfg.dt_s, max_diff};
}

}  // namespace ahs
