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

#ifndef DPTEXT_VERIFY_H_
#define DPTEXT_VERIFY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "dptext/embedding_table.h"
#include "dptext/mechanisms.h"
#include "dptext/rng.h"

namespace dptext {

struct VerificationResult {
  std::string name;
  bool pass = false;
  double worst_case = 0.0;
  double bound = 0.0;
  // Monte Carlo checks are reproducible per seed but not exact.
  bool deterministic = true;
  // Informational checks never fail the suite.
  bool informational = false;
  std::string details;

  // `<name> pass=<bool> worst=<float> bound=<float>`
  std::string Line() const;
};

nlohmann::json VerificationResultToJson(const VerificationResult& r);

// Tokens on a line: token i sits at positions[i].
EmbeddingTable LineLayout(std::span<const double> positions);

// Exact exponential-mechanism DP check. Row x of `score_table` holds the
// scores input x assigns to a shared candidate set, each in [0, 1]
// (sensitivity 1). worst_case = max over (x, x', y) of
// ln(P_x[y] / P_x'[y]); passes iff worst_case <= epsilon + 1e-9.
VerificationResult CheckEmDp(const Eigen::MatrixXd& score_table, double epsilon);

// 1000-style sweep: `trials` random tables with 2..max_candidates
// candidates and 2..max_inputs inputs, scores uniform in [0, 1].
VerificationResult CheckEmDpRandom(double epsilon, std::size_t trials,
                                   std::size_t max_candidates, Rng& rng);

// Monte Carlo estimate of Pr[t in C_W(origin)] for a nearer and a farther
// token. Strictly nearer: passes iff the frequency gap is >= 3 pooled
// binomial standard errors, or both frequencies coincide with zero spread.
// Equidistant: passes iff the gap is within 3 standard errors.
// worst_case = freq(nearer) - freq(farther), bound = 3 SE.
VerificationResult CheckMembershipMonotonicity(
    const EmbeddingTable& layout, TokenId origin, TokenId nearer,
    TokenId farther, double eps_lap, std::size_t trials, Rng& rng,
    std::optional<double> sensitivity = std::nullopt);

// Every (origin, target) pair must co-occur in at least one of `trials`
// adjacency draws per origin. worst_case = observed coverage fraction,
// bound = 1.
VerificationResult CheckFullSupport(const EmbeddingTable& layout,
                                    double eps_lap, std::size_t trials, Rng& rng,
                                    std::optional<double> sensitivity = std::nullopt);

// For every origin and each forced radius, checks over all candidate pairs
// that d(t, a) >= d(t, b) implies u(t, a) <= u(t, b) and Pr[a|t] <= Pr[b|t].
// In noisy-distance mode the noisy embedding is placed at phi(t) + r along the
// first axis; violations are reported and the result is informational.
// worst_case = number of violations, bound = 0.
VerificationResult CheckDocumentPrivacyMonotonicity(
    const EmbeddingTable& table, const MechanismConfig& cfg,
    std::span<const double> radii);

struct VerifySuiteOptions {
  std::uint64_t seed = 7;
  // When set, every EM check uses this epsilon only.
  std::optional<double> epsilon;
  double eps_lap = 1.0;
  std::size_t em_trials = 1000;
  std::size_t membership_trials = 50000;
  std::size_t support_trials = 20000;
};

// Built-in fixtures covering every check above. Never touches the network.
std::vector<VerificationResult> RunVerificationSuite(
    const VerifySuiteOptions& options);

}  // namespace dptext

#endif  // DPTEXT_VERIFY_H_
