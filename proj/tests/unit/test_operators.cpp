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
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "su11/fock/ladder.hpp"
#include "su11/fock/operators.hpp"

namespace {

using namespace su11;

constexpr double equivalence_tol = 1e-8;

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXcd identity_like(const FockCutoff& c) {
    return Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(c.dimension()),
                                      static_cast<Eigen::Index>(c.dimension()));
}

TEST(Squeezer, ZeroGainIsIdentity) {
    const FockCutoff c(12);
    EXPECT_EQ(max_abs(squeezer_direct(GainConfig(0.0), c).matrix() - identity_like(c)), 0.0);
    EXPECT_EQ(max_abs(squeezer_factored(GainConfig(0.0, 1.3), c).matrix() - identity_like(c)), 0.0);
}

TEST(Squeezer, LiteralModeMatchesDenseExponentialOfLadderGenerator) {
    const FockCutoff c(14);
    const LadderOperators ops = ladder_ops(c);
    for (const GainConfig gain : {GainConfig(0.4, 0.0), GainConfig(1.0, 2.1)}) {
        const Eigen::MatrixXcd gen = gain.xi() * ops.a_dag.matrix() * ops.b_dag.matrix() -
                                     std::conj(gain.xi()) * ops.a.matrix() * ops.b.matrix();
        const Eigen::MatrixXcd want = gen.exp();
        const FockOperator got = squeezer_direct(gain, c, DirectRouteOptions::literal());
        EXPECT_LE(max_abs(got.matrix() - want), 1e-12);
        EXPECT_LE(max_abs(got.matrix().adjoint() * got.matrix() - identity_like(c)), 1e-12);
    }
}

TEST(Squeezer, VacuumAmplitudeIsSech) {
    const FockCutoff c(30);
    for (double g : {0.2, 0.7, 1.0}) {
        const FockOperator s = squeezer_direct(GainConfig(g, 0.6), c);
        EXPECT_NEAR(std::abs(s.element(0, 0, 0, 0) - 1.0 / std::cosh(g)), 0.0, 1e-13);
    }
}

TEST(Squeezer, FactoredAgreesWithDirectOnSafeBlock) {
    const FockCutoff c(30);
    for (const GainConfig gain : {GainConfig(0.3, 0.0), GainConfig(0.8, 4.0), GainConfig(1.0, 1.0)}) {
        EXPECT_LE(safe_block_max_diff(squeezer_factored(gain, c), squeezer_direct(gain, c)), equivalence_tol);
    }
}

TEST(Squeezer, FactoredVacuumColumnIsTwoModeSqueezedVacuum) {
    const FockCutoff c(20);
    const GainConfig gain(0.7, 0.9);
    const FockOperator s = squeezer_factored(gain, c);
    const complex t = std::polar(std::tanh(0.7), 0.9);
    for (std::size_t i = 0; i < c.dimension(); ++i) {
        const auto [na, nb] = c.occupations(i);
        const complex want = na == nb ? std::pow(t, static_cast<double>(na)) / std::cosh(0.7) : complex{};
        EXPECT_NEAR(std::abs(s.matrix()(static_cast<Eigen::Index>(i), 0) - want), 0.0, 1e-15);
    }
}

TEST(Squeezer, LiteralUnitarityOnSafeBlock) {
    const FockCutoff c(30);
    const FockOperator s = squeezer_direct(GainConfig(1.0, 0.5), c, DirectRouteOptions::literal());
    EXPECT_LE(safe_block_unitarity_residual(s), equivalence_tol);
}

TEST(Interferometer, ZeroPhaseIsIdentity) {
    const FockCutoff c(30);
    const GainConfig gain(0.9, 0.4);
    EXPECT_LE(safe_block_max_diff(interferometer_unitary_direct(gain, 0.0, c), FockOperator::identity(c)), 1e-10);
    EXPECT_EQ(max_abs(interferometer_unitary_normal_ordered(gain, 0.0, c).matrix() - identity_like(c)), 0.0);
}

TEST(Interferometer, ZeroGainIsBarePhaseShifter) {
    const FockCutoff c(10);
    const double phi = 1.1;
    const FockOperator direct = interferometer_unitary_direct(GainConfig(0.0), phi, c);
    const FockOperator normal = interferometer_unitary_normal_ordered(GainConfig(0.0), phi, c);
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(121, 121);
    for (std::size_t i = 0; i < c.dimension(); ++i) {
        want(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
            std::polar(1.0, phi * static_cast<double>(c.occupations(i).first));
    }
    EXPECT_LE(max_abs(direct.matrix() - want), 1e-14);
    EXPECT_LE(max_abs(normal.matrix() - want), 1e-14);
}

TEST(Interferometer, NormalOrderedMatchesDirect) {
    const FockCutoff c(30);
    std::mt19937_64 rng(20261014);
    std::uniform_real_distribution<double> g_dist(0.05, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int draw = 0; draw < 3; ++draw) {
        const GainConfig gain(g_dist(rng), angle(rng));
        const double phi = angle(rng);
        EXPECT_LE(safe_block_max_diff(interferometer_unitary_normal_ordered(gain, phi, c),
                                      interferometer_unitary_direct(gain, phi, c)),
                  equivalence_tol)
            << "g=" << gain.g() << " theta=" << gain.theta() << " phi=" << phi;
    }
}

TEST(Interferometer, LiteralUnitarityOnSafeBlock) {
    const FockCutoff c(30);
    const FockOperator u = interferometer_unitary_direct(GainConfig(1.0, 0.2), 2.0, c, DirectRouteOptions::literal());
    EXPECT_LE(safe_block_unitarity_residual(u), equivalence_tol);
}

TEST(Interferometer, LiteralTruncationCorruptsSafeBlockAtStrongGain) {
    // the plain truncated exponential reflects amplitude off the cutoff edge,
    // which reaches the safe block at g = 1; this is why the direct route pads
    const FockCutoff c(30);
    const GainConfig gain(1.0, 0.0);
    const double literal = safe_block_max_diff(
        interferometer_unitary_normal_ordered(gain, 2.0, c),
        interferometer_unitary_direct(gain, 2.0, c, DirectRouteOptions::literal()));
    EXPECT_GT(literal, equivalence_tol);
}

TEST(Mu, ZeroPhaseIsParity) {
    const FockCutoff c(24);
    const GainConfig gain(0.8, 2.0);
    const FockOperator pi_b = parity_b_operator(c);
    EXPECT_LE(safe_block_max_diff(mu_operator_conjugated(gain, 0.0, c), pi_b), 1e-10);
    EXPECT_EQ(max_abs(mu_operator_normal_ordered(gain, 0.0, c).matrix() - pi_b.matrix()), 0.0);
}

TEST(Mu, HermitianWithBoundedSafeSpectrum) {
    const FockCutoff c(30);
    const GainConfig gain(1.0, 0.7);
    const FockOperator mu = mu_operator_conjugated(gain, 1.9, c);
    EXPECT_LE(hermiticity_residual(mu.matrix()), 1e-10);

    std::vector<Eigen::Index> safe;
    for (std::size_t i = 0; i < c.dimension(); ++i) {
        const auto [na, nb] = c.occupations(i);
        if (na + nb <= c.n_max() / 2) {
            safe.push_back(static_cast<Eigen::Index>(i));
        }
    }
    const auto n = static_cast<Eigen::Index>(safe.size());
    Eigen::MatrixXcd sub(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            sub(i, j) = mu.matrix()(safe[i], safe[j]);
        }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(sub, Eigen::EigenvaluesOnly);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1.0 - 1e-8);
    EXPECT_LE(eig.eigenvalues().maxCoeff(), 1.0 + 1e-8);
}

TEST(Mu, NormalOrderedMatchesConjugated) {
    const FockCutoff c(30);
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> g_dist(0.05, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int draw = 0; draw < 3; ++draw) {
        const GainConfig gain(g_dist(rng), angle(rng));
        const double phi = angle(rng);
        const FockOperator conj = mu_operator_conjugated(gain, phi, c);
        const FockOperator normal = mu_operator_normal_ordered(gain, phi, c);
        EXPECT_LE(safe_block_max_diff(normal, conj), equivalence_tol);
        const double prefactor = measurement_coeffs(gain, phi).prefactor;
        EXPECT_NEAR(std::abs(conj.element(0, 0, 0, 0) - prefactor), 0.0, 1e-10);
        EXPECT_NEAR(std::abs(normal.element(0, 0, 0, 0) - prefactor), 0.0, 1e-15);
    }
}

TEST(SafeBlock, RejectsMismatchedCutoffs) {
    EXPECT_THROW(safe_block_max_diff(FockOperator::identity(FockCutoff(3)), FockOperator::identity(FockCutoff(4))),
                 DomainError);
}

}  // namespace
