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

#include "dptext/attacks.h"

#include <algorithm>
#include <cstdio>

#include "dptext/errors.h"
#include "dptext/perturbed_io.h"
#include "dptext/prompts.h"

namespace dptext {
namespace {

void CheckLengths(std::span<const TokenId> perturbed,
                  std::span<const TokenId> originals) {
  if (perturbed.size() != originals.size()) {
    throw ContractError("perturbed and original sequences differ in length (" +
                        std::to_string(perturbed.size()) + " vs " +
                        std::to_string(originals.size()) + ")");
  }
}

}  // namespace

void AttackReport::Finalize() {
  token_count = per_token.size();
  recovered_count = static_cast<std::size_t>(
      std::count_if(per_token.begin(), per_token.end(),
                    [](const TokenOutcome& t) { return t.recovered; }));
  asr = token_count == 0 ? 0.0
                         : static_cast<double>(recovered_count) /
                               static_cast<double>(token_count);
  privacy = 1.0 - asr;
}

void AttackReport::Merge(const AttackReport& other) {
  const std::size_t base = per_token.size();
  for (TokenOutcome t : other.per_token) {
    t.position += base;
    per_token.push_back(std::move(t));
  }
  if (other.failed && !failed) {
    failed = true;
    error = other.error;
  }
  Finalize();
}

nlohmann::json AttackReportToJson(const AttackReport& report) {
  nlohmann::json j;
  j["attack"] = report.attack;
  j["asr"] = report.asr;
  j["privacy"] = report.privacy;
  j["recovered"] = report.recovered_count;
  j["tokens"] = report.token_count;
  j["failed"] = report.failed;
  if (report.failed) j["error"] = report.error;
  j["per_token"] = nlohmann::json::array();
  for (const auto& t : report.per_token) {
    nlohmann::json e = {{"position", t.position},
                        {"original_id", t.original_id},
                        {"recovered", t.recovered},
                        {"candidate_ids", t.candidate_ids}};
    if (!t.candidate_texts.empty()) {
      nlohmann::json texts = nlohmann::json::array();
      for (const auto& s : t.candidate_texts) texts.push_back(JsonText(s));
      e["candidate_texts"] = std::move(texts);
    }
    j["per_token"].push_back(std::move(e));
  }
  return j;
}

std::string AttackSummaryLine(const AttackReport& report, std::size_t k,
                              double epsilon) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "asr=%.6f privacy=%.6f k=%zu eps=%g",
                report.asr, report.privacy, k, epsilon);
  return buf;
}

AttackReport EmbeddingInversion(std::span<const TokenId> perturbed,
                                std::span<const TokenId> originals,
                                const EmbeddingTable& table, std::size_t k) {
  CheckLengths(perturbed, originals);
  if (k < 1 || k > static_cast<std::size_t>(table.size())) {
    throw ContractError("inversion k must be in [1, |V|]");
  }
  AttackReport report;
  report.attack = "inversion";
  report.per_token.resize(perturbed.size());
  for (std::size_t i = 0; i < perturbed.size(); ++i) {
    TokenOutcome& t = report.per_token[i];
    t.position = i;
    t.original_id = originals[i];
    table.CheckId(originals[i]);
    t.candidate_ids = table.Nearest(table.Embedding(perturbed[i]), k);
    t.recovered = std::find(t.candidate_ids.begin(), t.candidate_ids.end(),
                            originals[i]) != t.candidate_ids.end();
  }
  report.Finalize();
  return report;
}

AttackReport GptInferenceAttack(std::span<const TokenId> perturbed,
                                std::span<const TokenId> originals,
                                const Vocabulary& vocab, LlmClient& client,
                                std::size_t chunk_size, const RetryPolicy& retry) {
  CheckLengths(perturbed, originals);
  if (chunk_size < 1) throw ContractError("chunk_size must be >= 1");
  AttackReport report;
  report.attack = "gpt";
  for (std::size_t start = 0; start < perturbed.size(); start += chunk_size) {
    const std::size_t len = std::min(chunk_size, perturbed.size() - start);
    const auto chunk_perturbed = TokenTexts(perturbed.subspan(start, len), vocab);
    std::vector<std::string> predictions;
    try {
      const std::string body =
          RunInference(client, BuildGptAttackPrompt(chunk_perturbed), retry);
      predictions = ParseGptAttackResponse(body, len);
    } catch (const Error& e) {
      report.failed = true;
      report.error = "chunk at position " + std::to_string(start) + ": " + e.what();
      report.Finalize();
      return report;
    }
    for (std::size_t i = 0; i < len; ++i) {
      TokenOutcome t;
      t.position = start + i;
      t.original_id = originals[start + i];
      t.candidate_texts = {predictions[i]};
      if (auto id = vocab.Find(predictions[i])) t.candidate_ids = {*id};
      t.recovered = predictions[i] == vocab.token(originals[start + i]);
      report.per_token.push_back(std::move(t));
    }
  }
  report.Finalize();
  return report;
}

AttackReport MaskAttack(std::span<const TokenId> perturbed,
                        std::span<const TokenId> originals,
                        const Vocabulary& vocab, MaskedLmClient& client,
                        std::size_t k) {
  CheckLengths(perturbed, originals);
  if (k < 1) throw ContractError("mask attack k must be >= 1");
  AttackReport report;
  report.attack = "mask";
  const std::vector<std::string> texts = TokenTexts(perturbed, vocab);
  for (std::size_t i = 0; i < perturbed.size(); ++i) {
    std::vector<std::string> masked = texts;
    masked[i] = kMaskToken;
    std::vector<std::string> candidates;
    try {
      candidates = client.Predict(masked, i, k);
    } catch (const Error& e) {
      report.failed = true;
      report.error = "position " + std::to_string(i) + ": " + e.what();
      report.Finalize();
      return report;
    }
    if (candidates.size() > k) candidates.resize(k);
    TokenOutcome t;
    t.position = i;
    t.original_id = originals[i];
    const std::string& original = vocab.token(originals[i]);
    t.recovered =
        std::find(candidates.begin(), candidates.end(), original) != candidates.end();
    for (const auto& c : candidates) {
      if (auto id = vocab.Find(c)) t.candidate_ids.push_back(*id);
    }
    t.candidate_texts = std::move(candidates);
    report.per_token.push_back(std::move(t));
  }
  report.Finalize();
  return report;
}

}  // namespace dptext
