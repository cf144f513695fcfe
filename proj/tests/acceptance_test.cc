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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "dptext/attacks.h"
#include "dptext/cli.h"
#include "dptext/dp_core.h"
#include "dptext/mechanisms.h"
#include "dptext/metrics.h"
#include "dptext/prompts.h"
#include "dptext/rng.h"
#include "dptext/verify.h"
#include "test_util.h"

namespace dptext {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

// 1. Exact max ln-ratio of the exponential mechanism stays within epsilon.
Outcome EmDpRatio() {
  const auto start = Clock::now();
  Rng rng(1);
  bool pass = true;
  double worst_slack = -1e300;
  for (double eps : {0.01, 0.5, 1.0, 2.0, 6.0, 18.0}) {
    const VerificationResult r = CheckEmDpRandom(eps, 1000, 6, rng);
    pass = pass && r.pass && r.worst_case <= eps + 1e-9;
    worst_slack = std::max(worst_slack, r.worst_case - eps);
  }
  const double t = Seconds(start);
  return {pass && t < 5.0,
          Fmt("max(worst - eps)=%.6g over 6x1000 tables, %.2fs (limit 5s)",
              worst_slack, t)};
}

// 2. Sampled replacement frequencies match the exact mechanism distribution.
Outcome SamplingFidelity() {
  const auto start = Clock::now();
  const std::vector<double> xs = {0.0, 1.0, 2.0, 3.0};
  const EmbeddingTable table = LineLayout(xs);
  MechanismConfig cfg;
  cfg.kind = MechanismKind::kGlobal;
  cfg.epsilon_em = 2.0;
  // Closed form: u_i = 1 - x_i / 3, p_i proportional to exp(eps * u_i / 2).
  std::vector<double> exact(4);
  double z = 0.0;
  for (int i = 0; i < 4; ++i) z += exact[i] = std::exp(cfg.epsilon_em * (1.0 - xs[i] / 3.0) / 2.0);
  for (double& p : exact) p /= z;

  const int draws = 100000;
  std::vector<double> freq(4, 0.0);
  Rng rng(2);
  for (int i = 0; i < draws; ++i) freq[PerturbToken(0, table, cfg, rng).output] += 1.0;
  double tv = 0.0;
  for (int i = 0; i < 4; ++i) tv += 0.5 * std::abs(freq[i] / draws - exact[i]);
  const double t = Seconds(start);
  return {tv <= 0.01 && t < 5.0,
          Fmt("TV=%.5f (limit 0.01) over %d draws, %.2fs (limit 5s)", tv, draws, t)};
}

// 3. Nearer tokens join the random adjacency more often.
Outcome Membership() {
  const auto start = Clock::now();
  const std::vector<double> xs = {0.0, 1.0, 3.0};
  Rng rng(3);
  const VerificationResult r =
      CheckMembershipMonotonicity(LineLayout(xs), 0, 1, 2, 1.0, 50000, rng);
  const double t = Seconds(start);
  return {r.pass && r.worst_case > r.bound && t < 10.0,
          Fmt("gap=%.5f > 3SE=%.5f, %.2fs (limit 10s)", r.worst_case, r.bound, t)};
}

// 4. Every token can enter every adjacency.
Outcome FullSupport() {
  const auto start = Clock::now();
  const std::vector<double> xs = {0.0, 1.0, 2.0, 4.0, 7.0};
  Rng rng(4);
  const VerificationResult r = CheckFullSupport(LineLayout(xs), 1.0, 20000, rng);
  const double t = Seconds(start);
  return {r.pass && t < 10.0,
          Fmt("coverage=%.3f, %.2fs (limit 10s)", r.worst_case, t)};
}

// 5. Scores and probabilities never increase with distance.
Outcome ScoringMonotonicity() {
  MechanismConfig cfg;
  const std::vector<double> radii = {0.5, 1.0, 2.0, 3.0, 5.0, 10.0};
  double violations = 0.0;
  bool pass = true;
  for (const std::vector<double>& xs :
       {std::vector<double>{0, 1, 2, 5}, std::vector<double>{0, 1, 3},
        std::vector<double>{0, 0, 3}, std::vector<double>{0, -2, 2}}) {
    const VerificationResult r =
        CheckDocumentPrivacyMonotonicity(LineLayout(xs), cfg, radii);
    violations += r.worst_case;
    pass = pass && r.pass;
  }
  return {pass && violations == 0.0,
          Fmt("%g violations on 4 one-dimensional fixtures", violations)};
}

// 6. Laplace sampler scale.
Outcome LaplaceScale() {
  bool pass = true;
  std::string detail;
  Rng rng(6);
  for (double b : {0.1, 1.0, 10.0}) {
    const Eigen::VectorXd y = SampleLaplaceVector(1000000, b, rng);
    const double rel = std::abs(y.cwiseAbs().mean() - b) / b;
    pass = pass && rel <= 0.01;
    detail += Fmt("b=%g rel_err=%.5f ", b, rel);
  }
  return {pass, detail + "(limit 0.01)"};
}

std::size_t LevenshteinOracle(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

// 7. Metric oracles.
Outcome Metrics() {
  Rng rng(7);
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    std::string a, b;
    const auto la = rng.NextU64() % 31, lb = rng.NextU64() % 31;
    for (std::uint64_t i = 0; i < la; ++i) a += static_cast<char>('a' + rng.NextU64() % 5);
    for (std::uint64_t i = 0; i < lb; ++i) b += static_cast<char>('a' + rng.NextU64() % 5);
    if (Levenshtein(a, b) != LevenshteinOracle(a, b)) ++mismatches;
  }
  const std::vector<std::string> fives(5, "a");
  const double div = Diversity(fives, DiversityForm::kProduct);
  const double c_same = Coherence(Eigen::Vector3d(0.3, -1, 2), Eigen::Vector3d(0.3, -1, 2));
  const double c_orth = Coherence(Eigen::Vector3d(1, 2, 0), Eigen::Vector3d(-2, 1, 5));
  const bool pass = mismatches == 0 && std::abs(div - 1.0 / 24.0) <= 1e-12 &&
                    std::abs(c_same - 1.0) <= 1e-12 && std::abs(c_orth) <= 1e-12;
  return {pass, Fmt("levenshtein mismatches=%d/1000 diversity=%.15f coherence=%.15f/%.3g",
                    mismatches, div, c_same, c_orth)};
}

// 8. Privacy trend on a synthetic vocabulary.
struct TrendPoint {
  double eps;
  double rantext;
  double topk;
};

double InversionPrivacy(const EmbeddingTable& table, MechanismConfig cfg,
                        const TokenIdSeq& origins, const AdjacencyIndex& index) {
  TokenIdSeq perturbed(origins.size());
  const Rng root(88);
  for (std::size_t i = 0; i < origins.size(); ++i) {
    Rng r = root.Child(i);
    perturbed[i] = PerturbToken(origins[i], table, cfg, r, &index).output;
  }
  return EmbeddingInversion(perturbed, origins, table, 10).privacy;
}

// RANTEXT scored with `mode` against the top-K baseline (always origin-distance
// scoring) on a fixed Gaussian layout.
Outcome PrivacyTrend(ScoringMode mode, std::vector<TrendPoint>* points) {
  const std::size_t vocab = 200, dim = 8, tokens = 2000;
  const EmbeddingTable table = testing::GaussianTable(vocab, dim, 2024);
  const AdjacencyIndex index(table);
  TokenIdSeq origins(tokens);
  Rng pick(5);
  for (auto& o : origins) o = static_cast<TokenId>(pick.NextU64() % vocab);

  for (double eps : {0.01, 2.0, 6.0, 10.0, 18.0}) {
    MechanismConfig rantext;
    rantext.epsilon_em = eps;
    rantext.scoring_mode = mode;
    MechanismConfig topk;
    topk.kind = MechanismKind::kTopK;
    topk.epsilon_em = eps;
    points->push_back({eps, InversionPrivacy(table, rantext, origins, index),
                       InversionPrivacy(table, topk, origins, index)});
  }
  bool monotone = true;
  int wins = 0;
  std::string detail;
  for (std::size_t i = 0; i < points->size(); ++i) {
    const auto& p = (*points)[i];
    if (i > 0 && p.rantext > (*points)[i - 1].rantext) monotone = false;
    if (p.rantext > p.topk) ++wins;
    detail += Fmt("eps=%g rantext=%.4f topk=%.4f; ", p.eps, p.rantext, p.topk);
  }
  return {monotone && wins >= 4,
          detail + Fmt("monotone=%s wins=%d/5 (need 4)", monotone ? "yes" : "no", wins)};
}

// 9. Prompt goldens and the example response.
Outcome PromptGoldens() {
  const std::string doc = "Alice Smith lives at 42 Elm Road and works as a nurse.";
  const std::vector<std::string> gens = {"She enjoys gardening on weekends.",
                                         "Her shift starts at\nseven in the morning."};
  const std::vector<std::string> tokens = {"Privacy", "LLM", "Text"};
  const bool inference = BuildInferencePrompt(doc) == testing::ReadGolden("inference_prompt.txt");
  const bool restoration =
      BuildRestorationPrompt(doc, gens) == testing::ReadGolden("restoration_prompt.txt");
  const bool attack = BuildGptAttackPrompt(tokens) == testing::ReadGolden("gpt_attack_prompt.txt");
  const bool parsed =
      ParseGptAttackResponse(testing::ReadGolden("gpt_attack_response.txt"), 3) ==
      std::vector<std::string>{"Prediction1", "Prediction2", "Prediction3"};
  return {inference && restoration && attack && parsed,
          Fmt("inference=%d restoration=%d attack=%d parse=%d", inference,
              restoration, attack, parsed)};
}

// 10. `run --mock --seed 7` twice gives identical records apart from timestamps.
Outcome EndToEndDeterminism() {
  testing::TempDir dir;
  const auto fixture = testing::WriteFixture(
      dir.path(), testing::CharVocab({"Alice", " lives", " in", " Paris"}), 6, 3);
  testing::WriteText(dir / "input.txt", "Alice lives in Paris with her cat.");
  std::vector<std::string> records;
  for (const std::string sub : {"a", "b"}) {
    std::ostringstream out, err;
    const int code = RunCli({"--vocab", fixture.vocab.string(), "--embeddings",
                             fixture.embeddings.string(), "--runs-dir",
                             (dir / sub).string(), "--quiet", "--mock", "--seed", "7",
                             "run", "--input", (dir / "input.txt").string()},
                            out, err);
    if (code != 0) return {false, "run failed: " + err.str()};
    for (const auto& e : std::filesystem::directory_iterator(dir / sub)) {
      auto j = nlohmann::json::parse(testing::ReadText(e.path()));
      j.erase("timestamps");
      records.push_back(j.dump(2));
    }
  }
  const bool pass = records.size() == 2 && records[0] == records[1];
  return {pass, Fmt("%zu records, identical=%s", records.size(), pass ? "yes" : "no")};
}

}  // namespace
}  // namespace dptext

int main() {
  using namespace dptext;
  std::vector<TrendPoint> trend;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 em-dp-ratio", EmDpRatio},
      {"2 sampling-fidelity", SamplingFidelity},
      {"3 membership-monotonicity", Membership},
      {"4 full-support", FullSupport},
      {"5 scoring-monotonicity", ScoringMonotonicity},
      {"6 laplace-scale", LaplaceScale},
      {"7 metric-oracles", Metrics},
      {"8 privacy-trend", [&] { return PrivacyTrend(ScoringMode::kNoisyDistance, &trend); }},
      {"9 prompt-goldens", PromptGoldens},
      {"10 end-to-end-determinism", EndToEndDeterminism},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s [%s] %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  // Same trend with the default scoring mode. Reported, never counted.
  std::vector<TrendPoint> origin_trend;
  const Outcome info = PrivacyTrend(ScoringMode::kOriginDistance, &origin_trend);
  std::printf("INFO [8 privacy-trend origin-distance scoring] %s %s\n",
              info.pass ? "meets" : "misses", info.detail.c_str());
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
