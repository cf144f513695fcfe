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

#ifndef DPTEXT_PIPELINE_H_
#define DPTEXT_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"
#include "dptext/embedding_table.h"
#include "dptext/llm_client.h"
#include "dptext/mechanisms.h"
#include "dptext/rng.h"
#include "dptext/run_record.h"
#include "dptext/vocabulary.h"

namespace dptext {

struct PipelineOptions {
  std::size_t n_docs = 3;
  // Keep only the first `truncate_tokens` tokens of the input document.
  bool truncate_prefix = false;
  std::size_t truncate_tokens = 50;
  // Upper bound on simultaneous remote calls.
  std::size_t max_concurrency = 4;
  RetryPolicy retry;
  // Merged into the record's config snapshot (endpoint settings etc.).
  nlohmann::json extra_config = nlohmann::json::object();
};

// Deterministic id derived from the seed, document and config snapshot.
std::string MakeRunId(std::uint64_t seed, std::string_view document,
                      const nlohmann::json& config);

// Tokenizes the document, draws N perturbed copies, sends each to `remote`
// wrapped in the inference prompt, then asks `local` to restore a
// continuation from the N generations. Failures are recorded in the returned
// RunRecord rather than thrown; precondition violations still throw.
RunRecord RunPrivateInference(std::string_view document_text, const Vocabulary& vocab,
                       const EmbeddingTable& table, const MechanismConfig& cfg,
                       const PipelineOptions& options, LlmClient& remote,
                       LlmClient& local, const Rng& rng,
                       const AdjacencyIndex* index = nullptr);

// UTC timestamp, e.g. 2026-01-02T03:04:05.678Z.
std::string UtcNow();

}  // namespace dptext

#endif  // DPTEXT_PIPELINE_H_
