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

#include "dptext/verify.h"

#include <cmath>

#include <gtest/gtest.h>

#include "dptext/errors.h"

namespace dptext {
namespace {

// Independent evaluation of the worst-case log ratio.
double WorstLogRatio(const Eigen::MatrixXd& table, double eps) {
  double worst = 0.0;
  for (Eigen::Index x = 0; x < table.rows(); ++x) {
    for (Eigen::Index x2 = 0; x2 < table.rows(); ++x2) {
      double zx = 0, zx2 = 0;
      for (Eigen::Index y = 0; y < table.cols(); ++y) {
        zx += std::exp(eps * table(x, y) / 2);
        zx2 += std::exp(eps * table(x2, y) / 2);
      }
      for (Eigen::Index y = 0; y < table.cols(); ++y) {
        const double px = std::exp(eps * table(x, y) / 2) / zx;
        const double px2 = std::exp(eps * table(x2, y) / 2) / zx2;
        worst = std::max(worst, std::log(px / px2));
      }
    }
  }
  return worst;
}

TEST(CheckEmDpTest, SwappedScoresGiveHalfEpsilon) {
  Eigen::MatrixXd t(2, 2);
  t << 1, 0, 0, 1;
  const auto r = CheckEmDp(t, 1.0);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.worst_case, 0.5, 1e-12);
}

TEST(CheckEmDpTest, SingleChangedScore) {
  // Only one score differs, so the normalizer absorbs part of the change.
  // The worst direction is output 1 under (0, 0) against (1, 0).
  Eigen::MatrixXd t(2, 2);
  t << 1, 0, 0, 0;
  const auto r = CheckEmDp(t, 1.0);
  EXPECT_NEAR(r.worst_case, std::log((std::exp(0.5) + 1.0) / 2.0), 1e-12);
  EXPECT_NEAR(r.worst_case, WorstLogRatio(t, 1.0), 1e-12);
}

TEST(CheckEmDpTest, MatchesOracleOnRandomTables) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    Eigen::MatrixXd t(3, 4);
    for (Eigen::Index r = 0; r < 3; ++r)
      for (Eigen::Index c = 0; c < 4; ++c) t(r, c) = rng.Uniform01();
    const double eps = 0.1 + 10 * rng.Uniform01();
    const auto res = CheckEmDp(t, eps);
    ASSERT_NEAR(res.worst_case, WorstLogRatio(t, eps), 1e-9);
    ASSERT_TRUE(res.pass);
  }
}

TEST(CheckEmDpTest, RejectsOutOfRangeScores) {
  Eigen::MatrixXd t(2, 2);
  t << 2, 0, 0, 1;
  EXPECT_THROW(CheckEmDp(t, 1.0), ContractError);
}

TEST(CheckEmDpRandomTest, PassesAcrossEpsilons) {
  Rng rng(1);
  for (double eps : {0.01, 0.5, 1.0, 2.0, 6.0, 18.0}) {
    const auto r = CheckEmDpRandom(eps, 300, 6, rng);
    EXPECT_TRUE(r.pass) << r.Line();
    EXPECT_LE(r.worst_case, eps + 1e-9);
  }
}

TEST(MembershipTest, NearerMoreLikely) {
  const std::vector<double> xs = {0, 1, 3};
  Rng rng(2);
  const auto r = CheckMembershipMonotonicity(LineLayout(xs), 0, 1, 2, 1.0, 20000, rng);
  EXPECT_TRUE(r.pass) << r.details;
  EXPECT_GT(r.worst_case, r.bound);
  EXPECT_FALSE(r.deterministic);
}

TEST(FullSupportTest, AllPairsObserved) {
  const std::vector<double> xs = {0, 1, 2, 4, 7};
  Rng rng(3);
  const auto r = CheckFullSupport(LineLayout(xs), 1.0, 20000, rng);
  EXPECT_TRUE(r.pass) << r.details;
  EXPECT_DOUBLE_EQ(r.worst_case, 1.0);
}

TEST(DocumentPrivacyTest, OriginDistanceHasNoViolations) {
  const std::vector<double> xs = {0, 1, 2, 5};
  const std::vector<double> radii = {1, 2, 5};
  MechanismConfig cfg;
  const auto r = CheckDocumentPrivacyMonotonicity(LineLayout(xs), cfg, radii);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.worst_case, 0.0);
  EXPECT_FALSE(r.informational);
}

TEST(DocumentPrivacyTest, NoisyDistanceIsInformational) {
  const std::vector<double> xs = {0, 1, 2, 5};
  const std::vector<double> radii = {1, 2, 5};
  MechanismConfig cfg;
  cfg.scoring_mode = ScoringMode::kNoisyDistance;
  const auto r = CheckDocumentPrivacyMonotonicity(LineLayout(xs), cfg, radii);
  EXPECT_TRUE(r.informational);
}

TEST(SuiteTest, DeterministicChecksPass) {
  VerifySuiteOptions o;
  o.membership_trials = 10000;
  const auto results = RunVerificationSuite(o);
  EXPECT_GT(results.size(), 12u);
  for (const auto& r : results) {
    if (!r.informational) {
      EXPECT_TRUE(r.pass) << r.Line();
    }
  }
}

TEST(SuiteTest, LineFormat) {
  VerificationResult r;
  r.name = "x";
  r.pass = true;
  r.worst_case = 0.25;
  r.bound = 1;
  EXPECT_EQ(r.Line(), "x pass=true worst=0.25 bound=1");
}

}  // namespace
}  // namespace dptext
