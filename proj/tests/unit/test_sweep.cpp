// Copyright 2026 The su11-parity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "su11/sweep.hpp"

namespace {

using namespace su11;
constexpr double pi = std::numbers::pi;

PhaseGrid full_turn() { return PhaseGrid(0.0, 2.0 * pi, 361); }

TEST(PhaseGridTest, Validation) {
    EXPECT_THROW(PhaseGrid(0.0, 1.0, 1), DomainError);
    EXPECT_THROW(PhaseGrid(1.0, 1.0, 5), DomainError);
    EXPECT_THROW(PhaseGrid(2.0, 1.0, 5), DomainError);
    EXPECT_THROW(PhaseGrid(0.0, std::nan(""), 5), DomainError);
    const PhaseGrid g(0.0, 2.0 * pi, 361);
    EXPECT_EQ(g.at(0), 0.0);
    EXPECT_EQ(g.at(360), 2.0 * pi);
    EXPECT_EQ(g.values().size(), 361u);
    EXPECT_DOUBLE_EQ(g.at(180), pi);
}

TEST(ParityCurveTest, VacuumCurveSymmetricAboutHalfTurn) {
    const ParityCurve c = parity_curve(TwoModeVacuum{}, GainConfig(0.5), full_turn());
    ASSERT_EQ(c.values.size(), 361u);
    for (std::size_t i = 0; i <= 180; ++i) {
        EXPECT_NEAR(c.values[i], c.values[360 - i], 1e-13) << i;
    }
    for (double v : c.values) {
        EXPECT_LE(std::abs(v), 1.0 + 1e-12);
    }
}

TEST(ParityCurveTest, NoGainIsFlat) {
    const ParityCurve c = parity_curve(TwoModeVacuum{}, GainConfig(0.0), full_turn());
    for (double v : c.values) {
        EXPECT_EQ(v, 1.0);
    }
}

TEST(ParityCurveTest, FockOneIsMinusVacuumSquared) {
    const ParityCurve vac = parity_curve(TwoModeVacuum{}, GainConfig(0.5), full_turn());
    const ParityCurve one = parity_curve(VacuumFock(1), GainConfig(0.5), full_turn());
    for (std::size_t i = 0; i < 361; ++i) {
        EXPECT_NEAR(one.values[i], -vac.values[i] * vac.values[i], 1e-14);
    }
}

TEST(ParityCurveTest, ThreadCountDoesNotChangeBits) {
    const InputState s = ThermalSqueezed(0.7, 0.5, 0.3);
    const PhaseGrid grid(0.0, 2.0 * pi, 1001);
    const ParityCurve serial = parity_curve(s, GainConfig(0.8, 1.0), grid, 1);
    for (unsigned t : {2u, 3u, 8u}) {
        const ParityCurve parallel = parity_curve(s, GainConfig(0.8, 1.0), grid, t);
        ASSERT_EQ(parallel.values.size(), serial.values.size());
        EXPECT_EQ(std::memcmp(parallel.values.data(), serial.values.data(), serial.values.size() * sizeof(double)), 0);
    }
}

TEST(Sensitivity, VacuumExample) {
    const double g = 0.5;
    const SensitivityResult r = sensitivity_curve(TwoModeVacuum{}, GainConfig(g), PhaseGrid(0.001, pi - 0.001, 400));
    EXPECT_NEAR(r.delta_phi_min / 0.850918, 1.0, 0.01);
    EXPECT_EQ(r.phi_opt, 0.001);
    EXPECT_EQ(r.curve.size(), 400u);
    EXPECT_TRUE(r.skipped.empty());
    EXPECT_NEAR(r.n_bar, 2.0 * std::sinh(g) * std::sinh(g), 1e-8);
    EXPECT_NEAR(r.snl, 1.357, 1e-3);
    EXPECT_NEAR(r.hl, 1.0 / r.n_bar, 1e-15);
    EXPECT_TRUE(r.below_hl);
    for (std::size_t i = 1; i < r.curve.size(); ++i) {
        EXPECT_GT(r.curve[i].delta_phi, r.curve[i - 1].delta_phi);
    }
}

TEST(Sensitivity, SingleAdmissiblePoint) {
    // phi = 0 is stationary, leaving only the upper end
    const SensitivityResult r = sensitivity_curve(TwoModeVacuum{}, GainConfig(0.5), PhaseGrid(0.0, 0.4, 2));
    ASSERT_EQ(r.curve.size(), 1u);
    ASSERT_EQ(r.skipped.size(), 1u);
    EXPECT_EQ(r.skipped[0].phi, 0.0);
    EXPECT_EQ(r.skipped[0].reason, "stationary");
    EXPECT_EQ(r.delta_phi_min, r.curve[0].delta_phi);
    EXPECT_EQ(r.phi_opt, 0.4);
}

TEST(Sensitivity, AllStationaryIsEmpty) {
    EXPECT_THROW(sensitivity_curve(TwoModeVacuum{}, GainConfig(0.0), PhaseGrid(0.1, 1.0, 5)), EmptyResult);
}

TEST(Sensitivity, HeisenbergFlagConsistent) {
    const SensitivityResult r =
        sensitivity_curve(TwoModeCoherent(1.0, 0.5), GainConfig(1.0), PhaseGrid(0.01, 3.0, 50));
    EXPECT_EQ(r.below_hl, r.delta_phi_min < r.hl);
    EXPECT_GE(r.snl, r.hl);
}

TEST(Sensitivity, YurkeLimitAtSmallPhase) {
    for (double g : {0.3, 0.5, 1.0}) {
        for (const auto& [edge, tol] : {std::pair{1e-2, 1e-2}, std::pair{1e-3, 1e-3}}) {
            SweepOptions o;
            o.n_max = 30;
            const SensitivityResult r =
                sensitivity_curve(TwoModeVacuum{}, GainConfig(g), PhaseGrid(edge, pi - edge, 400), o);
            EXPECT_NEAR(r.delta_phi_min * std::sinh(2.0 * g), 1.0, tol) << "g=" << g << " edge=" << edge;
        }
    }
}

TEST(Verify, VacuumAgreesWithOracle) {
    const VerifyReport r = verify_closed_form(TwoModeVacuum{}, GainConfig(0.7, 1.0), PhaseGrid(0.0, 2.0 * pi, 9));
    EXPECT_LE(r.max_diff, 1e-8);
    EXPECT_TRUE(r.passed());
    EXPECT_TRUE(r.printed_form_rows.empty());
    EXPECT_EQ(r.rows.size(), 9u);
    EXPECT_GT(r.companion_n_max, r.n_max);
}

TEST(Verify, FockOneAdjudication) {
    const VerifyReport r = verify_closed_form(VacuumFock(1), GainConfig(0.5), PhaseGrid(pi / 2, pi, 2));
    ASSERT_EQ(r.printed_form_rows.size(), 2u);
    EXPECT_TRUE(r.rows[0].pass);
    EXPECT_FALSE(r.printed_form_rows[0].pass);
    EXPECT_NEAR(r.printed_form_rows[0].abs_diff, 2.0 * 0.176378, 1e-6);
    EXPECT_TRUE(r.passed());
}

TEST(Verify, NoGainIsExact) {
    const std::vector<InputState> states = {TwoModeVacuum{}, TwoModeCoherent(0.7, complex(0.1, 0.4)),
                                            CoherentSqueezed(0.3, 0.8, 2.0), ThermalSqueezed(1.0, 0.6, 0.0),
                                            VacuumFock(4)};
    // without gain the only error left is the truncated state mass
    SweepOptions o;
    o.oracle.max_leakage = 1e-14;
    o.dimension_cap = 10000;
    for (const InputState& s : states) {
        const VerifyReport r = verify_closed_form(s, GainConfig(0.0), PhaseGrid(0.0, 3.0, 4), o);
        EXPECT_LE(r.max_diff, 1e-12) << family_name(s);
    }
}

TEST(Verify, EveryFamilyAtModerateParameters) {
    const std::vector<InputState> states = {TwoModeCoherent(1.0, complex(0.0, -1.0)), CoherentSqueezed(1.0, 0.8, 0.5),
                                            ThermalSqueezed(1.0, 0.8, 1.0), VacuumFock(4)};
    SweepOptions o;
    o.threads = 4;
    for (const InputState& s : states) {
        const VerifyReport r = verify_closed_form(s, GainConfig(1.0, 0.3), PhaseGrid(0.2, 5.0, 3), o);
        EXPECT_LE(r.max_diff, 1e-6) << family_name(s);
    }
}

TEST(Verify, FixedCutoffTooSmallThrows) {
    SweepOptions o;
    o.n_max = 6;
    o.oracle.max_leakage = 1.0;
    EXPECT_THROW(verify_closed_form(CoherentSqueezed(1.0, 0.8, 0.0), GainConfig(1.0), PhaseGrid(0.5, 1.0, 2), o),
                 NotConverged);
}

}  // namespace
