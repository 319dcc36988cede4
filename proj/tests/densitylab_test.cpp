/*
 * Copyright 2026 the qcr authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "qcr/densitylab.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace dl = qcr::densitylab;
using dl::Rational;

namespace {

dl::ExamplePair pair3(const Rational& d1, const Rational& d2) {
    return dl::make_example_pair(3, Rational(2), d1, d2);
}

} // namespace

TEST(UnitBallVolume, KnownValues) {
    EXPECT_NEAR(dl::unit_ball_volume(3), 4.0 * M_PI / 3.0, 1e-14);
    EXPECT_NEAR(dl::unit_ball_volume(1), 2.0, 1e-14);
    EXPECT_NEAR(dl::unit_ball_volume(2), M_PI, 1e-14);
}

TEST(ExamplePair, ExactConstruction) {
    auto pair = pair3(Rational(1, 2), Rational(1, 4));
    EXPECT_TRUE(pair.f1.is_exact());
    EXPECT_EQ(pair.f1.exact_mass(), Rational(1));
    EXPECT_EQ(pair.f2.exact_mass(), Rational(1));
    double cd = dl::unit_ball_volume(3);
    EXPECT_NEAR(pair.f1.levels()[0], 0.5 / cd, 1e-14);
    EXPECT_NEAR(pair.f1.levels()[1], 0.5 / cd, 1e-14); // B^3 - 1 = 1
    EXPECT_NEAR(pair.f2.levels()[0], 1.0 / cd, 1e-14);
    EXPECT_NEAR(pair.f1.radii()[1], std::cbrt(2.0), 1e-14);
}

TEST(ExamplePair, SupConvergenceAsDeltaVanishes) {
    double cd = dl::unit_ball_volume(3);
    for (int k = 1; k <= 4; ++k) {
        Rational delta(1, static_cast<long long>(std::pow(10.0, k)));
        auto pair = pair3(delta, delta);
        double sup_gap = 0.0;
        for (double r : {0.5, 1.1}) {
            sup_gap = std::max(sup_gap,
                               std::abs(pair.f1.value_at(r) - pair.f2.value_at(r)));
        }
        EXPECT_NEAR(sup_gap, static_cast<double>(delta) / cd, 1e-12);
    }
}

TEST(RenyiStep, UniformBallIsLogVolume) {
    auto pair = pair3(Rational(1, 2), Rational(1, 2));
    for (double alpha : {0.5, 1.0, 2.0, 7.0}) {
        EXPECT_NEAR(dl::renyi_step(pair.f2, alpha), std::log(4.0 * M_PI / 3.0), 1e-13);
    }
}

TEST(RenyiStep, TwoShellClosedValue) {
    // D=3, B^3 = 2, delta = 1/2, alpha = 2: ln 2 + ln C_3.
    auto pair = pair3(Rational(1, 2), Rational(1, 2));
    EXPECT_NEAR(dl::renyi_step(pair.f1, 2.0), std::log(2.0) + std::log(4.0 * M_PI / 3.0),
                1e-13);
    EXPECT_NEAR(dl::renyi_step(pair.f1, 2.0), 2.1255591, 1e-7);
}

TEST(RenyiStep, SmallOrderApproachesLogSupportMeasure) {
    auto pair = pair3(Rational(1, 2), Rational(1, 2));
    double expected = std::log(2.0 * 4.0 * M_PI / 3.0);
    EXPECT_NEAR(dl::renyi_step(pair.f1, 1e-3), expected, 0.01 * std::abs(expected));
}

TEST(RenyiStep, DiscreteDeltaDistributionHasZeroEntropy) {
    dl::DiscreteDistribution delta{{1.0}, {}};
    for (double alpha : {0.5, 1.0, 2.0}) {
        EXPECT_EQ(dl::renyi_step(delta, alpha), 0.0);
    }
}

TEST(RenyiStep, DiscreteSmallOrderApproachesLogSupportCount) {
    dl::DiscreteDistribution d{{0.7, 0.2, 0.1, 0.0}, {}};
    EXPECT_NEAR(dl::renyi_step(d, 1e-4), std::log(3.0), 0.01 * std::log(3.0));
}

TEST(EffectiveDomain, SupportMeasure) {
    auto pair = pair3(Rational(1, 2), Rational(1, 2));
    double cd = dl::unit_ball_volume(3);
    EXPECT_NEAR(dl::effective_domain_measure(pair.f2), cd, 1e-13);
    EXPECT_NEAR(dl::effective_domain_measure(pair.f1), 2.0 * cd, 1e-13);
}

TEST(EffectiveDomain, ZeroLevelShellExcluded) {
    auto rho = dl::StepDensity::from_exact(
        3, {{Rational(1), Rational(1)}, {Rational(8), Rational(0)}});
    EXPECT_NEAR(dl::effective_domain_measure(rho), dl::unit_ball_volume(3), 1e-13);
}

TEST(Localization, OrderingAndTies) {
    auto pair = pair3(Rational(1, 2), Rational(1, 2));
    EXPECT_EQ(dl::is_localized(pair.f2, pair.f1), dl::Localization::f_localized);
    EXPECT_EQ(dl::is_localized(pair.f1, pair.f2), dl::Localization::g_localized);
    EXPECT_EQ(dl::is_localized(pair.f2, pair.g2), dl::Localization::equal);

    // Relabeling interior shells with equal support does not change the verdict.
    auto split_uniform = dl::StepDensity::from_exact(
        3, {{Rational(1, 2), Rational(1)}, {Rational(1), Rational(1)}});
    EXPECT_EQ(dl::is_localized(pair.f2, split_uniform), dl::Localization::equal);
}

TEST(Majorization, DiscreteCases) {
    dl::DiscreteDistribution a{{0.7, 0.3}, {}};
    dl::DiscreteDistribution b{{0.6, 0.4}, {}};
    EXPECT_TRUE(dl::majorizes(a, b));
    EXPECT_FALSE(dl::majorizes(b, a));
    EXPECT_TRUE(dl::majorizes(a, a));
}

TEST(Majorization, ContinuousUniformROverTwoShell) {
    for (auto delta : {Rational(1, 10), Rational(1, 2), Rational(9, 10)}) {
        auto pair = pair3(delta, delta);
        EXPECT_TRUE(dl::majorizes(pair.f2, pair.f1));
        EXPECT_FALSE(dl::majorizes(pair.f1, pair.f2));
    }
}

TEST(Majorization, MixedTypesRejected) {
    dl::DiscreteDistribution with_measures{{0.25, 0.25}, {{1.0, 3.0}}};
    dl::DiscreteDistribution plain{{0.5, 0.5}, {}};
    EXPECT_THROW(dl::majorizes(with_measures, plain), std::invalid_argument);
}

TEST(DeltaNeighboring, ThresholdBehavior) {
    auto pair = pair3(Rational(1, 100), Rational(1, 100));
    // sup gap = delta1 / C_3 for B^3 = 2.
    double gap = 0.01 / dl::unit_ball_volume(3);
    EXPECT_NEAR(gap, 0.0023873, 1e-7);
    EXPECT_TRUE(dl::delta_neighboring(pair.f1, pair.f2, 0.0024));
    EXPECT_FALSE(dl::delta_neighboring(pair.f1, pair.f2, 0.0023));
    EXPECT_TRUE(dl::delta_neighboring(pair.f1, pair.f1, 1e-9));
}

TEST(Transform, ExactScalingPreservesMass) {
    auto pair = pair3(Rational(3, 10), Rational(3, 10));
    auto scaled = dl::transform(pair.f1, Rational(2));
    EXPECT_TRUE(scaled.is_exact());
    EXPECT_EQ(scaled.exact_mass(), Rational(1));
    // f_bar(r) = a^D f(a r): levels x 8, radii / 2 in D = 3.
    EXPECT_NEAR(scaled.levels()[0], 8.0 * pair.f1.levels()[0], 1e-12);
    EXPECT_NEAR(scaled.radii()[0], 0.5 * pair.f1.radii()[0], 1e-12);
}

TEST(Transform, EntropyShiftIsMinusDLogA) {
    auto pair = pair3(Rational(3, 10), Rational(3, 10));
    auto scaled = dl::transform(pair.f1, Rational(2));
    for (double alpha : {0.5, 1.0, 2.0}) {
        EXPECT_NEAR(dl::renyi_step(scaled, alpha),
                    dl::renyi_step(pair.f1, alpha) - 3.0 * std::log(2.0), 1e-12);
    }
}

TEST(Mixture, DisjointCopiesShiftEntropyByLogTwo) {
    auto pair = pair3(Rational(3, 10), Rational(3, 10));
    auto mix = dl::mixture({{pair.f1, 0.5}, {pair.f1, 0.5}}, dl::MixtureLayout::disjoint);
    EXPECT_FALSE(mix.overlap_flagged);
    for (double alpha : {0.5, 2.0}) {
        EXPECT_NEAR(dl::renyi_step(mix, alpha),
                    dl::renyi_step(pair.f1, alpha) + std::log(2.0), 1e-12);
    }
}

TEST(Mixture, ConcentricOverlapFlaggedAndExact) {
    auto pair = pair3(Rational(1, 2), Rational(1, 4));
    auto mix = dl::mixture({{pair.f1, 0.5}, {pair.g1, 0.5}}, dl::MixtureLayout::concentric);
    EXPECT_TRUE(mix.overlap_flagged);
    double mass = 0.0;
    for (auto [level, vol] : mix.cells) mass += level * vol;
    EXPECT_NEAR(mass, 1.0, 1e-12);
}

TEST(Superpose, EqualCopyCountFactorIsOne) {
    auto pair = pair3(Rational(3, 10), Rational(1, 5));
    auto f2 = dl::superpose_copies(pair.f1, 2);
    auto g2 = dl::superpose_copies(pair.g1, 2);
    double base = std::exp(dl::renyi_step(pair.f1, 2.0) - dl::renyi_step(pair.g1, 3.0));
    double super = std::exp(dl::renyi_step(f2, 2.0) - dl::renyi_step(g2, 3.0));
    EXPECT_NEAR(super, base, 1e-10 * std::abs(base));
}

TEST(Extremality, UniformEqualCellSolution) {
    // n equal cells of measure 1; alpha = beta = L(Omega)/L(Omega - Omega_i).
    const int n = 4;
    std::vector<double> levels(n, 1.0 / n), measures(n, 1.0);
    dl::DiscreteDistribution f{levels, measures}, g{levels, measures};
    double order = static_cast<double>(n) / (n - 1);
    auto res = dl::extremality_residual(f, g, order, order);
    EXPECT_NEAR(res.eq41, 0.0, 1e-12);
    EXPECT_NEAR(res.eq41_balance, 0.0, 1e-12);
    EXPECT_NEAR(res.eq42_f, 0.0, 1e-12);
    EXPECT_NEAR(res.eq42_g, 0.0, 1e-12);
}

TEST(Extremality, UniformFZeroBetaCase) {
    std::vector<double> measures(4, 1.0);
    dl::DiscreteDistribution f{{0.25, 0.25, 0.25, 0.25}, measures};
    dl::DiscreteDistribution g{{0.4, 0.3, 0.2, 0.1}, measures};
    auto res = dl::extremality_residual(f, g, 1.7, 0.0);
    EXPECT_NEAR(res.eq41, 0.0, 1e-12);
    EXPECT_NEAR(res.eq42_g, 0.0, 1e-15);
}

TEST(Extremality, GenericConfigurationIsNonstationary) {
    std::vector<double> measures(4, 1.0);
    dl::DiscreteDistribution f{{0.4, 0.3, 0.2, 0.1}, measures};
    dl::DiscreteDistribution g{{0.1, 0.2, 0.3, 0.4}, measures};
    auto res = dl::extremality_residual(f, g, 2.0, 3.0);
    EXPECT_GT(res.eq41, 1e-3);
    EXPECT_GT(res.eq42_f, 1e-3);
}

TEST(StepDensity, InvalidConstruction) {
    EXPECT_THROW(dl::StepDensity::from_shells(3, {{1.0, 0.1}}), std::domain_error);
    EXPECT_THROW(dl::StepDensity::from_exact(
                     3, {{Rational(1), Rational(1)}, {Rational(1), Rational(1)}}),
                 std::domain_error);
    EXPECT_THROW(
        dl::StepDensity::from_exact(3, {{Rational(1), Rational(1, 2)}}),
        std::domain_error);
}

TEST(DiscreteDistribution, Validation) {
    EXPECT_THROW((dl::DiscreteDistribution{{0.5, 0.4}, {}}.validate()), std::domain_error);
    EXPECT_THROW((dl::DiscreteDistribution{{-0.1, 1.1}, {}}.validate()), std::domain_error);
    EXPECT_NO_THROW((dl::DiscreteDistribution{{0.5, 0.5}, {}}.validate()));
}
