// Copyright 2026 The dptext Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dptext/dp_core.h"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "dptext/errors.h"
#include "dptext/rng.h"

namespace dptext {
namespace {

TEST(RngTest, SameSeedReplays) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.NextU64(), b.NextU64());
}

TEST(RngTest, MatchesReferenceEngine) {
  Rng r(5489);
  std::mt19937_64 ref(5489);
  EXPECT_EQ(r.NextU64(), ref());
}

TEST(RngTest, Uniform01StrictlyInsideUnitInterval) {
  Rng r(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.Uniform01();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RngTest, ChildStreamsAreIndependentOfParentState) {
  Rng a(9);
  const Rng before = a.Child(1, 2);
  a.NextU64();
  EXPECT_EQ(a.Child(1, 2).seed(), before.seed());
  EXPECT_NE(a.Child(1, 2).seed(), a.Child(2, 1).seed());
  EXPECT_EQ(a.Child(3, 4).seed(),
            SplitMix64(SplitMix64(SplitMix64(9) ^ 3) ^ 4));
}

TEST(SplitMix64Test, KnownValue) {
  // First output of the reference SplitMix64 generator seeded with 0.
  EXPECT_EQ(SplitMix64(0), 0xE220A8397B1DCDAFULL);
}

TEST(LaplaceTest, MeanAbsoluteValueIsScale) {
  Rng rng(3);
  const Eigen::VectorXd y = SampleLaplaceVector(200000, 2.0, rng);
  EXPECT_NEAR(y.cwiseAbs().mean(), 2.0, 0.03);
  EXPECT_NEAR(y.mean(), 0.0, 0.03);
}

TEST(LaplaceTest, ConsumesOneUniformPerCoordinate) {
  Rng a(11), b(11);
  SampleLaplaceVector(7, 1.0, a);
  for (int i = 0; i < 7; ++i) b.Uniform01();
  EXPECT_EQ(a.NextU64(), b.NextU64());
}

TEST(LaplaceTest, MatchesInverseCdf) {
  Rng a(17), b(17);
  const Eigen::VectorXd y = SampleLaplaceVector(5, 0.5, a);
  for (int i = 0; i < 5; ++i) {
    const double u = b.Uniform01() - 0.5;
    const double expected =
        -0.5 * (u < 0 ? -1.0 : 1.0) * std::log(1.0 - 2.0 * std::abs(u));
    EXPECT_NEAR(y(i), expected, 1e-12);
  }
}

TEST(ExpMechanismTest, ProbabilitiesFollowClosedForm) {
  Eigen::Vector3d s(0.0, 0.5, 1.0);
  const Eigen::VectorXd p = ExpMechanismProbs(s, 2.0, 1.0);
  const double z = std::exp(0.0) + std::exp(0.5) + std::exp(1.0);
  EXPECT_NEAR(p(0), 1.0 / z, 1e-15);
  EXPECT_NEAR(p(1), std::exp(0.5) / z, 1e-15);
  EXPECT_NEAR(p(2), std::exp(1.0) / z, 1e-15);
  EXPECT_TRUE(IsProbabilityVector(p));
}

TEST(ExpMechanismTest, LargeEpsilonDoesNotOverflow) {
  Eigen::Vector2d s(0.0, 1.0);
  const Eigen::VectorXd p = ExpMechanismProbs(s, 5000.0, 1.0);
  EXPECT_TRUE(p.allFinite());
  EXPECT_NEAR(p(1), 1.0, 1e-12);
}

TEST(ExpMechanismTest, ZeroEpsilonIsUniform) {
  Eigen::Vector4d s(0.1, 0.9, 0.3, 0.0);
  const Eigen::VectorXd p = ExpMechanismProbs(s, 0.0, 1.0);
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(p(i), 0.25);
}

TEST(ExpMechanismTest, RejectsBadInput) {
  EXPECT_THROW(ExpMechanismProbs(Eigen::VectorXd(), 1.0, 1.0), ContractError);
  EXPECT_THROW(ExpMechanismProbs(Eigen::Vector2d(0, 1), -1.0, 1.0), ContractError);
  EXPECT_THROW(ExpMechanismProbs(Eigen::Vector2d(0, 1), 1.0, 0.0), ContractError);
  EXPECT_THROW(ExpMechanismProbs(Eigen::Vector2d(0, NAN), 1.0, 1.0), ContractError);
}

TEST(SampleCategoricalTest, NeverPicksZeroMass) {
  Eigen::Vector3d p(0.5, 0.0, 0.5);
  Rng rng(2);
  for (int i = 0; i < 10000; ++i) ASSERT_NE(SampleCategorical(p, rng), 1);
}

TEST(SampleCategoricalTest, DegenerateDistribution) {
  Eigen::Vector3d p(0.0, 0.0, 1.0);
  Rng rng(2);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(SampleCategorical(p, rng), 2);
}

TEST(SampleCategoricalTest, FrequenciesMatch) {
  Eigen::Vector4d p(0.1, 0.2, 0.3, 0.4);
  Rng rng(8);
  Eigen::Vector4d counts = Eigen::Vector4d::Zero();
  const int n = 200000;
  for (int i = 0; i < n; ++i) counts(SampleCategorical(p, rng)) += 1.0;
  EXPECT_LT(0.5 * (counts / n - p).cwiseAbs().sum(), 0.005);
}

TEST(MinMaxNormalizeTest, MapsToUnitInterval) {
  Eigen::Vector3d v(2.0, 4.0, 3.0);
  const Eigen::VectorXd n = MinMaxNormalize(v);
  EXPECT_DOUBLE_EQ(n(0), 0.0);
  EXPECT_DOUBLE_EQ(n(1), 1.0);
  EXPECT_DOUBLE_EQ(n(2), 0.5);
}

TEST(MinMaxNormalizeTest, ConstantInputIsAllZero) {
  const Eigen::VectorXd n = MinMaxNormalize(Eigen::Vector3d(7, 7, 7));
  EXPECT_EQ(n, Eigen::VectorXd::Zero(3));
}

TEST(IsProbabilityVectorTest, Rejects) {
  EXPECT_FALSE(IsProbabilityVector(Eigen::VectorXd()));
  EXPECT_FALSE(IsProbabilityVector(Eigen::Vector2d(0.7, 0.7)));
  EXPECT_FALSE(IsProbabilityVector(Eigen::Vector2d(-0.1, 1.1)));
  EXPECT_TRUE(IsProbabilityVector(Eigen::Vector2d(0.3, 0.7)));
}

}  // namespace
}  // namespace dptext
