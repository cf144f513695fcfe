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

#ifndef DPTEXT_ATTACKS_H_
#define DPTEXT_ATTACKS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "dptext/embedding_table.h"
#include "dptext/llm_client.h"
#include "dptext/vocabulary.h"

namespace dptext {

struct TokenOutcome {
  std::size_t position = 0;
  TokenId original_id = 0;
  bool recovered = false;
  // Adversary guesses that map to vocabulary ids.
  std::vector<TokenId> candidate_ids;
  // Raw guesses for text-based attacks.
  std::vector<std::string> candidate_texts;
};

// Attack success rate over token positions (duplicates counted) and
// privacy = 1 - asr, both derived from the same counts.
struct AttackReport {
  std::string attack;
  std::vector<TokenOutcome> per_token;
  std::size_t recovered_count = 0;
  std::size_t token_count = 0;
  double asr = 0.0;
  double privacy = 1.0;
  bool failed = false;
  std::string error;

  // Recomputes the counts and rates from `per_token`. An empty report has
  // asr 0.
  void Finalize();
  // Concatenates another report's positions, re-based after ours.
  void Merge(const AttackReport& other);
};

nlohmann::json AttackReportToJson(const AttackReport& report);

// `asr=<..> privacy=<..> k=<..> eps=<..>`
std::string AttackSummaryLine(const AttackReport& report, std::size_t k,
                              double epsilon);

// Nearest-neighbor inversion: for each perturbed token, the k tokens whose
// embeddings are closest to it (ties by smaller id). Recovered iff the
// original is among them. `table` is the adversary's table.
AttackReport EmbeddingInversion(std::span<const TokenId> perturbed,
                                std::span<const TokenId> originals,
                                const EmbeddingTable& table, std::size_t k);

// Asks an LLM to recover the original of each perturbed token, at most
// `chunk_size` tokens per prompt. A prediction counts when it equals the
// original token text byte for byte. Client and parse failures mark the
// report failed instead of throwing.
AttackReport GptInferenceAttack(std::span<const TokenId> perturbed,
                                std::span<const TokenId> originals,
                                const Vocabulary& vocab, LlmClient& client,
                                std::size_t chunk_size = 64,
                                const RetryPolicy& retry = {});

// Masks each position in turn and asks `client` for its top-k guesses.
AttackReport MaskAttack(std::span<const TokenId> perturbed,
                        std::span<const TokenId> originals,
                        const Vocabulary& vocab, MaskedLmClient& client,
                        std::size_t k);

}  // namespace dptext

#endif  // DPTEXT_ATTACKS_H_
