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
#include <cstdio>

#include "dptext/dp_core.h"
#include "dptext/errors.h"

namespace dptext {

std::string VerificationResult::Line() const {
  char buf[64];
  std::string out = name;
  out += pass ? " pass=true" : " pass=false";
  std::snprintf(buf, sizeof(buf), " worst=%.9g", worst_case);
  out += buf;
  std::snprintf(buf, sizeof(buf), " bound=%.9g", bound);
  out += buf;
  if (informational) out += " informational";
  if (!deterministic) out += " monte_carlo";
  return out;
}

nlohmann::json VerificationResultToJson(const VerificationResult& r) {
  return {{"name", r.name},       {"pass", r.pass},
          {"worst", r.worst_case}, {"bound", r.bound},
          {"deterministic", r.deterministic},
          {"informational", r.informational},
          {"details", r.details}};
}

EmbeddingTable LineLayout(std::span<const double> positions) {
  std::vector<std::vector<double>> points;
  for (double p : positions) points.push_back({p});
  return TableFromPoints(points);
}

VerificationResult CheckEmDp(const Eigen::MatrixXd& score_table, double epsilon) {
  if (score_table.rows() == 0 || score_table.cols() == 0) {
    throw ContractError("CheckEmDp: empty score table");
  }
  if ((score_table.array() < 0.0).any() || (score_table.array() > 1.0).any()) {
    throw ContractError("CheckEmDp: scores must lie in [0, 1]");
  }
  Eigen::MatrixXd log_probs(score_table.rows(), score_table.cols());
  for (Eigen::Index x = 0; x < score_table.rows(); ++x) {
    const Eigen::VectorXd p =
        ExpMechanismProbs(score_table.row(x).transpose(), epsilon, 1.0);
    log_probs.row(x) = p.array().log().matrix().transpose();
  }
  double worst = 0.0;
  for (Eigen::Index x = 0; x < log_probs.rows(); ++x) {
    for (Eigen::Index x2 = 0; x2 < log_probs.rows(); ++x2) {
      if (x == x2) continue;
      worst = std::max(worst, (log_probs.row(x) - log_probs.row(x2)).maxCoeff());
    }
  }
  VerificationResult r;
  r.name = "em_dp";
  r.worst_case = worst;
  r.bound = epsilon;
  r.pass = worst <= epsilon + 1e-9;
  return r;
}

VerificationResult CheckEmDpRandom(double epsilon, std::size_t trials,
                                   std::size_t max_candidates, Rng& rng) {
  if (max_candidates < 2) throw ContractError("max_candidates must be >= 2");
  VerificationResult agg;
  agg.name = "em_dp_random";
  agg.bound = epsilon;
  agg.pass = true;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto cands = static_cast<Eigen::Index>(
        2 + rng.NextU64() % (max_candidates - 1));
    const auto inputs = static_cast<Eigen::Index>(2 + rng.NextU64() % 5);
    Eigen::MatrixXd scores(inputs, cands);
    for (Eigen::Index i = 0; i < inputs; ++i) {
      for (Eigen::Index c = 0; c < cands; ++c) scores(i, c) = rng.Uniform01();
    }
    const VerificationResult r = CheckEmDp(scores, epsilon);
    agg.worst_case = std::max(agg.worst_case, r.worst_case);
    agg.pass = agg.pass && r.pass;
  }
  agg.details = std::to_string(trials) + " tables, <= " +
                std::to_string(max_candidates) + " candidates";
  return agg;
}

VerificationResult CheckMembershipMonotonicity(
    const EmbeddingTable& layout, TokenId origin, TokenId nearer,
    TokenId farther, double eps_lap, std::size_t trials, Rng& rng,
    std::optional<double> sensitivity) {
  const Eigen::VectorXd d = layout.DistancesFrom(origin);
  const double d_near = d(nearer);
  const double d_far = d(farther);
  if (d_near > d_far) {
    throw ContractError("CheckMembershipMonotonicity: 'nearer' is farther");
  }
  MechanismConfig cfg;
  cfg.epsilon_lap = eps_lap;
  cfg.laplace_sensitivity = sensitivity;
  const double scale = cfg.LaplaceScale(layout);
  std::size_t hits_near = 0;
  std::size_t hits_far = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const double radius = SampleLaplaceVector(layout.dim(), scale, rng).norm();
    hits_near += d_near <= radius;
    hits_far += d_far <= radius;
  }
  const double n = static_cast<double>(trials);
  const double f_near = static_cast<double>(hits_near) / n;
  const double f_far = static_cast<double>(hits_far) / n;
  const double pooled = (f_near + f_far) / 2.0;
  const double se = std::sqrt(pooled * (1.0 - pooled) * 2.0 / n);
  const double gap = f_near - f_far;

  VerificationResult r;
  r.name = "membership_monotonicity";
  r.deterministic = false;
  r.worst_case = gap;
  r.bound = 3.0 * se;
  if (d_near == d_far) {
    r.pass = std::abs(gap) <= 3.0 * se;
  } else {
    r.pass = (se > 0.0 && gap >= 3.0 * se) || (se == 0.0 && gap >= 0.0);
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "freq(nearer)=%.6f freq(farther)=%.6f trials=%zu eps_lap=%g",
                f_near, f_far, trials, eps_lap);
  r.details = buf;
  return r;
}

VerificationResult CheckFullSupport(const EmbeddingTable& layout,
                                    double eps_lap, std::size_t trials, Rng& rng,
                                    std::optional<double> sensitivity) {
  const auto v = static_cast<std::size_t>(layout.size());
  VerificationResult r;
  r.name = "full_support";
  r.deterministic = false;
  r.bound = 1.0;
  if (v == 1) {
    r.worst_case = 1.0;
    r.pass = true;
    r.details = "single-token vocabulary";
    return r;
  }
  MechanismConfig cfg;
  cfg.epsilon_lap = eps_lap;
  cfg.laplace_sensitivity = sensitivity;
  std::vector<std::vector<bool>> seen(v, std::vector<bool>(v, false));
  std::size_t covered = 0;
  for (TokenId origin = 0; origin < v; ++origin) {
    for (std::size_t t = 0; t < trials; ++t) {
      const AdjacencySample s = ComputeRandomAdjacency(origin, layout, cfg, rng);
      for (TokenId c : s.candidates) {
        if (!seen[origin][c]) {
          seen[origin][c] = true;
          ++covered;
        }
      }
      if (s.candidates.size() == v) break;
    }
  }
  r.worst_case = static_cast<double>(covered) / static_cast<double>(v * v);
  r.pass = covered == v * v;
  r.details = std::to_string(covered) + "/" + std::to_string(v * v) +
              " pairs observed, trials per origin <= " + std::to_string(trials);
  return r;
}

VerificationResult CheckDocumentPrivacyMonotonicity(
    const EmbeddingTable& table, const MechanismConfig& cfg,
    std::span<const double> radii) {
  const bool noisy_distance = cfg.scoring_mode == ScoringMode::kNoisyDistance;
  std::size_t violations = 0;
  std::size_t pairs = 0;
  for (TokenId origin = 0; origin < static_cast<TokenId>(table.size()); ++origin) {
    for (double radius : radii) {
      AdjacencySample s;
      if (noisy_distance) {
        Eigen::VectorXd noise = Eigen::VectorXd::Zero(table.dim());
        noise(0) = radius;
        s = RandomAdjacencyFromNoise(origin, table, noise);
      } else {
        s = RandomAdjacencyFromRadius(origin, table, radius);
      }
      const Eigen::VectorXd u = ScoreCandidates(s, table, cfg.scoring_mode);
      const Eigen::VectorXd p = ExpMechanismProbs(u, cfg.epsilon_em, 1.0);
      for (Eigen::Index a = 0; a < u.size(); ++a) {
        for (Eigen::Index b = 0; b < u.size(); ++b) {
          if (a == b || s.distances(a) < s.distances(b)) continue;
          ++pairs;
          if (u(a) > u(b) || p(a) > p(b)) ++violations;
        }
      }
    }
  }
  VerificationResult r;
  r.name = noisy_distance ? "document_privacy_noisy_distance"
                       : "document_privacy_monotonicity";
  r.informational = noisy_distance;
  r.worst_case = static_cast<double>(violations);
  r.bound = 0.0;
  r.pass = violations == 0;
  r.details = std::to_string(violations) + " violations over " +
              std::to_string(pairs) + " ordered pairs";
  return r;
}

std::vector<VerificationResult> RunVerificationSuite(
    const VerifySuiteOptions& options) {
  std::vector<VerificationResult> results;
  Rng rng(options.seed);

  std::vector<double> epsilons = {0.01, 0.5, 1.0, 2.0, 6.0, 18.0};
  if (options.epsilon) epsilons = {*options.epsilon};

  for (double eps : epsilons) {
    Eigen::MatrixXd swap(2, 2);
    swap << 1.0, 0.0, 0.0, 1.0;
    VerificationResult closed = CheckEmDp(swap, eps);
    closed.name = "em_dp_two_candidate[eps=" + std::to_string(eps) + "]";
    closed.details = "expected worst = eps/2";
    results.push_back(closed);

    Rng sweep_rng = rng.Child(1, static_cast<std::uint64_t>(eps * 1000));
    VerificationResult sweep =
        CheckEmDpRandom(eps, options.em_trials, 6, sweep_rng);
    sweep.name = "em_dp_random[eps=" + std::to_string(eps) + "]";
    results.push_back(sweep);
  }

  const std::vector<double> line013 = {0.0, 1.0, 3.0};
  const EmbeddingTable layout013 = LineLayout(line013);
  {
    Rng r = rng.Child(2);
    auto res = CheckMembershipMonotonicity(layout013, 0, 1, 2, options.eps_lap,
                                           options.membership_trials, r);
    res.name = "membership_monotonicity[0,1,3]";
    results.push_back(res);
  }
  {
    const std::vector<double> dup = {0.0, 0.0, 3.0};
    Rng r = rng.Child(3);
    auto res = CheckMembershipMonotonicity(LineLayout(dup), 0, 1, 2,
                                           options.eps_lap,
                                           options.membership_trials, r);
    res.name = "membership_duplicate[0,0,3]";
    results.push_back(res);
  }
  {
    const std::vector<double> sym = {0.0, -2.0, 2.0};
    Rng r = rng.Child(4);
    auto res = CheckMembershipMonotonicity(LineLayout(sym), 0, 1, 2,
                                           options.eps_lap,
                                           options.membership_trials, r);
    res.name = "membership_equidistant[0,-2,2]";
    results.push_back(res);
  }
  {
    const std::vector<double> five = {0.0, 1.0, 2.0, 3.0, 4.0};
    Rng r = rng.Child(5);
    auto res = CheckFullSupport(LineLayout(five), options.eps_lap,
                                options.support_trials, r);
    res.name = "full_support[5 tokens]";
    results.push_back(res);
  }

  const std::vector<double> line0125 = {0.0, 1.0, 2.0, 5.0};
  const std::vector<double> radii = {1.0, 2.0, 5.0};
  MechanismConfig cfg;
  cfg.epsilon_em = options.epsilon.value_or(1.0);
  for (const auto* layout : {&line0125, &line013}) {
    auto res = CheckDocumentPrivacyMonotonicity(LineLayout(*layout), cfg, radii);
    res.name += layout == &line0125 ? "[0,1,2,5]" : "[0,1,3]";
    results.push_back(res);
  }
  MechanismConfig noisy_cfg = cfg;
  noisy_cfg.scoring_mode = ScoringMode::kNoisyDistance;
  auto info = CheckDocumentPrivacyMonotonicity(LineLayout(line0125), noisy_cfg, radii);
  info.name += "[0,1,2,5]";
  results.push_back(info);
  return results;
}

}  // namespace dptext
