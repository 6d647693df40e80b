#include "ahs/evolution.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ahs/measurement.hpp"
#include "oracles.hpp"
#include "random_programs.hpp"
#include "test_programs.hpp"

namespace {

using namespace ahs;
using testing::control_program;
using testing::detuned_rabi_pr;
using testing::kOmega;
using testing::random_program;
using testing::resonant_rabi_pr;

AhsProgram single_atom(double omega, double phi, double delta, double duration) {
    return AhsProgram{Register{{{10.0, 10.0}}}, constant_drive(omega, phi, delta, duration),
                      std::nullopt, duration};
}

double p_r(const QuantumState& s) { return std::norm(s.amplitudes()[1]); }

TEST(GroundState, Shape) {
    const QuantumState g3 = ground_state(3);
    EXPECT_EQ(g3.dim(), 8u);
    EXPECT_DOUBLE_EQ(std::abs(g3.amplitudes()[0]), 1.0);
    for (std::size_t i = 1; i < 8; ++i) {
        EXPECT_DOUBLE_EQ(std::abs(g3.amplitudes()[i]), 0.0);
    }
    EXPECT_DOUBLE_EQ(ground_state(1).norm(), 1.0);
}

TEST(Evolve, ZeroDurationIsIdentity) {
    const AhsProgram p = single_atom(kOmega, 0.0, 0.0, 0.0);
    const QuantumState out = evolve(p, ground_state(1));
    EXPECT_DOUBLE_EQ(std::abs(out.amplitudes()[0]), 1.0);
}

TEST(Evolve, ResonantRabiClosedForm) {
    const double t_pi = std::numbers::pi / kOmega;
    for (int i = 1; i <= 10; ++i) {
        const double t = t_pi * i / 5.0;
        const QuantumState out = evolve(single_atom(kOmega, 0.0, 0.0, t), ground_state(1));
        EXPECT_NEAR(p_r(out), resonant_rabi_pr(kOmega, t), 1e-6) << "t = " << t;
    }
    const QuantumState pi_pulse =
        evolve(single_atom(kOmega, 0.0, 0.0, t_pi), ground_state(1));
    EXPECT_NEAR(p_r(pi_pulse), 1.0, 1e-6);
}

TEST(Evolve, ResonantRabiWithRk4) {
    IntegratorConfig cfg;
    cfg.method = IntegratorMethod::kRk4;
    const double t = std::numbers::pi / kOmega;
    const QuantumState out = evolve(single_atom(kOmega, 0.0, 0.0, t), ground_state(1), cfg);
    EXPECT_NEAR(p_r(out), 1.0, 1e-6);
}

TEST(Evolve, DetunedSuppression) {
    // paper ratio: delta = 20 omega; max P(r) = 1/401 at t = pi / W
    const double delta = 20.0 * kOmega;
    const double w = std::sqrt(kOmega * kOmega + delta * delta);
    const double t_peak = std::numbers::pi / w;
    const QuantumState out =
        evolve(single_atom(kOmega, 0.0, delta, t_peak), ground_state(1));
    EXPECT_NEAR(p_r(out), 1.0 / 401.0, 1e-6);
    EXPECT_NEAR(p_r(out), detuned_rabi_pr(kOmega, delta, t_peak), 1e-9);
}

TEST(Evolve, TwoAtomBlockade) {
    // V / Omega ~ 78 at 5.5 um: double excitation frozen out, collective
    // oscillation between |gg> and (|gr>+|rg>)/sqrt(2) at sqrt(2) Omega.
    AhsProgram pair{Register{{{10.0, 10.0}, {15.5, 10.0}}},
                    constant_drive(kOmega, 0.0, 0.0, 1e-6), std::nullopt, 1e-6};
    const double t_peak = std::numbers::pi / (std::sqrt(2.0) * kOmega);
    pair.duration_s = t_peak;
    pair.drive = constant_drive(kOmega, 0.0, 0.0, t_peak);
    const QuantumState out = evolve(pair, ground_state(2));
    const auto probs = probabilities(out);
    EXPECT_LT(probs[3], 0.01);                    // |rr>
    EXPECT_NEAR(probs[1] + probs[2], 1.0, 0.02);  // collective peak
}

TEST(Evolve, NormPreservedOnRandomPrograms) {
    rng::Stream stream(777);
    for (int trial = 0; trial < 25; ++trial) {
        const AhsProgram p = random_program(stream);
        const QuantumState out = evolve(p, ground_state(p.reg.size()));
        EXPECT_LT(std::abs(out.norm() - 1.0), 1e-8) << "trial " << trial;
    }
}

TEST(Evolve, PermutationCovariance) {
    // Swapping qubits 0 and 2 of the register permutes basis probabilities.
    const AhsProgram p = control_program({10.0, 10.0}, 1e-6);
    AhsProgram q = p;
    std::swap(q.reg.sites[0], q.reg.sites[2]);
    q.shift.emplace(q.shift->delta_local, std::vector<double>{1.0, 0.0, 0.0});

    const auto probs_p = probabilities(evolve(p, ground_state(3)));
    const auto probs_q = probabilities(evolve(q, ground_state(3)));
    const auto swap02 = [](std::size_t i) {
        const std::size_t b0 = i & 1u, b1 = (i >> 1) & 1u, b2 = (i >> 2) & 1u;
        return (b0 << 2) | (b1 << 1) | b2;
    };
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(probs_p[i], probs_q[swap02(i)], 1e-10) << "state " << i;
    }
}

TEST(Evolve, TranslationInvariance) {
    const AhsProgram p = control_program({10.0, 10.0}, 1e-6);
    const AhsProgram q = translate(p, 10.0, 10.0);
    const auto probs_p = probabilities(evolve(p, ground_state(3)));
    const auto probs_q = probabilities(evolve(q, ground_state(3)));
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(probs_p[i], probs_q[i], 1e-10);
    }
}

TEST(Evolve, GlobalPhaseCovariance) {
    const double t = 3e-7;
    const auto base = probabilities(
        evolve(single_atom(kOmega, 0.0, 1e6, t), ground_state(1)));
    const auto rotated = probabilities(
        evolve(single_atom(kOmega, 1.234, 1e6, t), ground_state(1)));
    EXPECT_NEAR(base[0], rotated[0], 1e-9);
    EXPECT_NEAR(base[1], rotated[1], 1e-9);
}

TEST(Evolve, MethodsAgree) {
    // Independent cross-check: midpoint-exponential vs RK4 on a blockaded
    // pair over half a microsecond (RK4 needs the finer step).
    AhsProgram pair{Register{{{10.0, 10.0}, {15.5, 10.0}}},
                    constant_drive(kOmega, 0.0, 0.0, 5e-7), std::nullopt, 5e-7};
    IntegratorConfig rk4;
    rk4.method = IntegratorMethod::kRk4;
    rk4.dt_s = 5e-11;
    const auto a = probabilities(evolve(pair, ground_state(2)));
    const auto b = probabilities(evolve(pair, ground_state(2), rk4));
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(a[i], b[i], 1e-6) << "state " << i;
    }
}

TEST(Evolve, RejectsBadInputs) {
    const AhsProgram p = single_atom(kOmega, 0.0, 0.0, 1e-6);
    EXPECT_THROW(evolve(p, ground_state(2)), DimensionMismatch);

    IntegratorConfig bad;
    bad.dt_s = 0.0;
    EXPECT_THROW(evolve(p, ground_state(1), bad), AhsError);
    bad.dt_s = 1e-9;
    bad.taylor_tol = 1e-3;
    EXPECT_THROW(evolve(p, ground_state(1), bad), AhsError);
}

TEST(Evolve, GiantStepDiverges) {
    // One step across the whole control program: the series cannot converge
    // at ||H|| dt in the thousands.
    const AhsProgram p = control_program({10.0, 10.0});
    IntegratorConfig giant;
    giant.dt_s = p.duration_s;
    EXPECT_THROW(evolve(p, ground_state(3), giant), NormDrift);
}

TEST(ConvergenceCheck, ControlProgramConverged) {
    const AhsProgram p = control_program({10.0, 10.0}, 1e-6);
    const ConvergenceReport report = convergence_check(p, ground_state(3));
    EXPECT_LT(report.max_probability_diff, 1e-6);
}

TEST(ConvergenceCheck, ConstantHamiltonianExactPerStep) {
    const AhsProgram p = single_atom(kOmega, 0.5, 3e6, 1e-6);
    const ConvergenceReport report = convergence_check(p, ground_state(1));
    EXPECT_LT(report.max_probability_diff, 1e-9);
}

TEST(ConvergenceCheck, FlagsUnderResolvedRun) {
    // Ramped detuning makes H(t) non-commuting across the step; one giant
    // step is then badly under-resolved while the series still converges.
    const double duration = 1.2566e-6;
    AhsProgram ramp{Register{{{10.0, 10.0}}},
                    DrivingField(Waveform::constant(kOmega, duration),
                                 Waveform::constant(0.0, duration),
                                 Waveform({0.0, duration}, {0.0, 1e7})),
                    std::nullopt, duration};
    IntegratorConfig giant;
    giant.dt_s = duration;
    const QuantumState one_step = evolve(ramp, ground_state(1), giant);
    const QuantumState converged = evolve(ramp, ground_state(1));
    const double diff =
        std::abs(std::norm(one_step.amplitudes()[1]) - std::norm(converged.amplitudes()[1]));
    EXPECT_GT(diff, 1e-3);
}

}  // namespace
