#include "ahs/program.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "ahs/rng.hpp"
#include "test_programs.hpp"

namespace {

using namespace ahs;
using testing::bare_triangle;
using testing::control_program;

TEST(TriangleRegister, PaperGeometry) {
    const Register reg = make_triangle_register(5.5, {0.0, 0.0});
    ASSERT_EQ(reg.size(), 3);
    EXPECT_DOUBLE_EQ(reg.sites[0].x_um, 0.0);
    EXPECT_DOUBLE_EQ(reg.sites[1].x_um, 5.5);
    EXPECT_DOUBLE_EQ(reg.sites[2].x_um, 2.75);
    EXPECT_NEAR(reg.sites[2].y_um, 5.5 * std::sqrt(3.0) / 2.0, 1e-12);
    for (int j = 0; j < 3; ++j) {
        for (int k = j + 1; k < 3; ++k) {
            EXPECT_NEAR(distance_um(reg.sites[j], reg.sites[k]), 5.5, 1e-12);
        }
    }
}

TEST(TriangleRegister, TranslationPreservesShape) {
    const Register a = make_triangle_register(5.5, {0.0, 0.0});
    const Register b = make_triangle_register(5.5, {10.0, 10.0});
    for (int j = 0; j < 3; ++j) {
        EXPECT_DOUBLE_EQ(b.sites[j].x_um, a.sites[j].x_um + 10.0);
        EXPECT_DOUBLE_EQ(b.sites[j].y_um, a.sites[j].y_um + 10.0);
        for (int k = j + 1; k < 3; ++k) {
            EXPECT_NEAR(distance_um(b.sites[j], b.sites[k]),
                        distance_um(a.sites[j], a.sites[k]), 1e-12);
        }
    }
}

TEST(TriangleRegister, RejectsNonPositiveSide) {
    EXPECT_THROW(make_triangle_register(0.0, {0.0, 0.0}), AhsError);
    EXPECT_THROW(make_triangle_register(-1.0, {0.0, 0.0}), AhsError);
}

TEST(Waveform, MidpointInterpolation) {
    const Waveform w({0.0, 1e-6}, {0.0, 2.5e6});
    EXPECT_DOUBLE_EQ(w.value_at(5e-7), 1.25e6);
    EXPECT_DOUBLE_EQ(w.value_at(0.0), 0.0);
    EXPECT_DOUBLE_EQ(w.value_at(1e-6), 2.5e6);
    EXPECT_THROW(w.value_at(2e-6), OutOfRange);
    EXPECT_THROW(w.value_at(-1e-9), OutOfRange);
}

TEST(Waveform, RejectsBadKnots) {
    EXPECT_THROW(Waveform({1e-6, 2e-6}, {0.0, 0.0}), AhsError);  // must start at 0
    EXPECT_THROW(Waveform({0.0, 0.0}, {0.0, 1.0}), AhsError);    // not increasing
    EXPECT_THROW(Waveform({0.0}, {0.0, 1.0}), AhsError);         // size mismatch
    EXPECT_THROW(Waveform({}, {}), AhsError);
}

TEST(Fields, InvariantsEnforced) {
    EXPECT_THROW(constant_drive(-1.0, 0.0, 0.0, 1e-6), AhsError);  // omega >= 0
    EXPECT_THROW(DrivingField(Waveform::constant(1.0, 1e-6), Waveform::constant(0.0, 2e-6),
                              Waveform::constant(0.0, 1e-6)),
                 WaveformMismatch);
    EXPECT_THROW(ShiftingField(Waveform::constant(-5e7, 1e-6), {0.0, 0.0, 1.0}),
                 AhsError);
    EXPECT_THROW(ShiftingField(Waveform::constant(5e7, 1e-6), {0.0, 0.0, 1.5}),
                 AhsError);
}

TEST(Validate, AcceptsControlProgram) {
    const AhsProgram p = control_program({10.0, 10.0});
    EXPECT_NO_THROW(validate(p, MachineConstraints{}));
}

TEST(Validate, SpacingViolation) {
    // Two triangles 3 um apart (below the 4 um minimum).
    const AhsProgram a = bare_triangle({10.0, 10.0});
    const AhsProgram b = translate(a, 5.5 + 3.0, 0.0);
    const AhsProgram merged = merge(a, b).program;
    EXPECT_THROW(validate(merged, MachineConstraints{}), SpacingViolation);
}

TEST(Validate, SmallTriangleFailsSpacing) {
    AhsProgram p = bare_triangle({10.0, 10.0});
    p.reg = make_triangle_register(1.0, {10.0, 10.0});
    EXPECT_THROW(validate(p, MachineConstraints{}), SpacingViolation);
}

TEST(Validate, OutOfField) {
    EXPECT_THROW(validate(bare_triangle({73.0, 10.0}), MachineConstraints{}), OutOfField);
    EXPECT_THROW(validate(bare_triangle({-1.0, 10.0}), MachineConstraints{}), OutOfField);
}

TEST(Validate, TooManyAtoms) {
    MachineConstraints tight;
    tight.max_atoms = 2;
    EXPECT_THROW(validate(bare_triangle({10.0, 10.0}), tight), TooManyAtoms);
}

TEST(Validate, WaveformMismatch) {
    AhsProgram p = control_program({10.0, 10.0});
    p.shift.emplace(Waveform::constant(5e7, p.duration_s / 2.0),
                    std::vector<double>{0.0, 0.0, 1.0});
    EXPECT_THROW(validate(p, MachineConstraints{}), WaveformMismatch);

    AhsProgram q = control_program({10.0, 10.0});
    q.shift.emplace(Waveform::constant(5e7, q.duration_s), std::vector<double>{0.0, 1.0});
    EXPECT_THROW(validate(q, MachineConstraints{}), WaveformMismatch);
}

TEST(Validate, IsPure) {
    const AhsProgram p = control_program({10.0, 10.0});
    const AhsProgram copy = p;
    validate(p, MachineConstraints{});
    EXPECT_TRUE(p == copy);
}

TEST(Translate, RoundTripAndIdentity) {
    const AhsProgram p = control_program({10.0, 10.0});
    EXPECT_TRUE(translate(p, 0.0, 0.0) == p);

    const AhsProgram shifted = translate(p, 10.0, 0.0);
    EXPECT_DOUBLE_EQ(shifted.reg.sites[0].x_um, 20.0);
    EXPECT_TRUE(shifted.drive == p.drive);

    const AhsProgram back = translate(shifted, -10.0, -0.0);
    for (int k = 0; k < 3; ++k) {
        EXPECT_DOUBLE_EQ(back.reg.sites[k].x_um, p.reg.sites[k].x_um);
        EXPECT_DOUBLE_EQ(back.reg.sites[k].y_um, p.reg.sites[k].y_um);
    }
}

TEST(Translate, DistanceMatrixInvariant) {
    ahs::rng::Stream stream(2024);
    for (int trial = 0; trial < 20; ++trial) {
        Register reg;
        const int n = 2 + static_cast<int>(stream.uniform() * 4);
        for (int i = 0; i < n; ++i) {
            reg.sites.push_back({stream.uniform() * 50.0, stream.uniform() * 50.0});
        }
        AhsProgram p{reg, constant_drive(1e6, 0.0, 0.0, 1e-6), std::nullopt, 1e-6};
        const AhsProgram q = translate(p, stream.uniform() * 20.0 - 10.0,
                                       stream.uniform() * 20.0 - 10.0);
        for (int j = 0; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                EXPECT_NEAR(distance_um(q.reg.sites[j], q.reg.sites[k]),
                            distance_um(p.reg.sites[j], p.reg.sites[k]), 1e-9);
            }
        }
    }
}

TEST(Merge, PatternsConcatenateWithZeroFill) {
    const AhsProgram victim = bare_triangle({10.0, 10.0});
    AhsProgram attacker = control_program({30.0, 30.0});
    const MergeResult result = merge(victim, attacker);

    ASSERT_EQ(result.program.reg.size(), 6);
    ASSERT_TRUE(result.program.shift.has_value());
    const std::vector<double> expected{0.0, 0.0, 0.0, 0.0, 0.0, 1.0};
    EXPECT_EQ(result.program.shift->pattern, expected);
    EXPECT_EQ(result.index_map_a, (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(result.index_map_b, (std::vector<int>{3, 4, 5}));
}

TEST(Merge, IndexMapsRecoverTenantSites) {
    const AhsProgram a = control_program({10.0, 10.0});
    const AhsProgram b = control_program({40.0, 40.0});
    const MergeResult result = merge(a, b);
    for (int k = 0; k < 3; ++k) {
        EXPECT_TRUE(result.program.reg.sites[result.index_map_a[k]] == a.reg.sites[k]);
        EXPECT_TRUE(result.program.reg.sites[result.index_map_b[k]] == b.reg.sites[k]);
    }
}

TEST(Merge, RejectsMismatches) {
    const AhsProgram a = bare_triangle({10.0, 10.0});

    AhsProgram different_drive = translate(a, 30.0, 0.0);
    different_drive.drive = constant_drive(2.0e6, 0.0, 0.0, a.duration_s);
    EXPECT_THROW(merge(a, different_drive), DriveMismatch);

    AhsProgram different_duration = bare_triangle({40.0, 10.0}, 2e-6);
    EXPECT_THROW(merge(a, different_duration), DurationMismatch);

    AhsProgram shift_a = control_program({10.0, 10.0});
    AhsProgram shift_b = control_program({40.0, 10.0});
    shift_b.shift.emplace(Waveform::constant(1e7, a.duration_s),
                          std::vector<double>{0.0, 0.0, 1.0});
    EXPECT_THROW(merge(shift_a, shift_b), ShiftMismatch);
}

TEST(Merge, IdenticalShiftWaveformsConcatenate) {
    const AhsProgram a = control_program({10.0, 10.0});
    const AhsProgram b = control_program({40.0, 10.0});
    const MergeResult result = merge(a, b);
    ASSERT_TRUE(result.program.shift.has_value());
    const std::vector<double> expected{0.0, 0.0, 1.0, 0.0, 0.0, 1.0};
    EXPECT_EQ(result.program.shift->pattern, expected);
}

}  // namespace
