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

#include "dptext/pipeline.h"

#include <openssl/sha.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <cstdio>
#include <thread>

#include "dptext/errors.h"
#include "dptext/perturbed_io.h"
#include "dptext/prompts.h"

namespace dptext {

std::string UtcNow() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const std::time_t secs = system_clock::to_time_t(now);
  const auto ms = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof(out), "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

std::string MakeRunId(std::uint64_t seed, std::string_view document,
                      const nlohmann::json& config) {
  std::string material = std::to_string(seed);
  material += '\0';
  material += document;
  material += '\0';
  material += config.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(material.data()), material.size(),
         digest);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id = "run-";
  for (int i = 0; i < 8; ++i) {
    id += kHex[digest[i] >> 4];
    id += kHex[digest[i] & 0xf];
  }
  return id;
}

RunRecord RunPrivateInference(std::string_view document_text, const Vocabulary& vocab,
                       const EmbeddingTable& table, const MechanismConfig& cfg,
                       const PipelineOptions& options, LlmClient& remote,
                       LlmClient& local, const Rng& rng,
                       const AdjacencyIndex* index) {
  if (options.n_docs < 1) throw ContractError("RunPrivateInference: n_docs must be >= 1");
  if (static_cast<Eigen::Index>(vocab.size()) != table.size()) {
    throw ContractError("vocabulary and embedding table sizes differ");
  }
  cfg.Validate();

  TokenIdSeq doc_ids = Tokenize(document_text, vocab);
  if (options.truncate_prefix && doc_ids.size() > options.truncate_tokens) {
    doc_ids.resize(options.truncate_tokens);
  }

  RunRecord record;
  record.raw_document = Detokenize(doc_ids, vocab);
  record.instruction = std::string(kInferenceInstruction);
  record.restoration_instruction = std::string(kRestorationInstruction);
  record.seed = rng.seed();
  record.config = {{"mechanism", MechanismConfigToJson(cfg)},
                   {"n_docs", options.n_docs},
                   {"truncate_prefix", options.truncate_prefix},
                   {"truncate_tokens", options.truncate_tokens}};
  for (auto it = options.extra_config.begin(); it != options.extra_config.end();
       ++it) {
    record.config[it.key()] = it.value();
  }
  record.run_id = MakeRunId(record.seed, record.raw_document, record.config);

  const auto docs =
      PerturbDocument(doc_ids, table, cfg, options.n_docs, rng, index);
  for (const auto& d : docs) {
    record.perturbed.push_back(
        {d.doc_index, Detokenize(d.perturbed_ids, vocab), d.perturbed_ids});
  }

  const std::size_t n = options.n_docs;
  record.generations.assign(n, std::nullopt);
  std::vector<CallTiming> timings(n);
  std::vector<std::string> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < n; j = next++) {
      timings[j].label = "remote:" + std::to_string(j + 1);
      timings[j].started_at = UtcNow();
      try {
        record.generations[j] = RunInference(
            remote, BuildInferencePrompt(record.perturbed[j].text), options.retry);
        timings[j].ok = true;
      } catch (const Error& e) {
        errors[j] = e.what();
      }
      timings[j].finished_at = UtcNow();
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(options.max_concurrency, 1, n);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  record.timestamps = std::move(timings);

  for (std::size_t j = 0; j < n; ++j) {
    if (!errors[j].empty()) {
      record.status = RunStatus::kRemoteFailed;
      record.error = "remote call " + std::to_string(j + 1) + ": " + errors[j];
      return record;
    }
  }

  std::vector<std::string> generations;
  for (const auto& g : record.generations) generations.push_back(*g);
  CallTiming restore{"restore", UtcNow(), "", false};
  try {
    record.restored = RunInference(
        local, BuildRestorationPrompt(record.raw_document, generations),
        options.retry);
    restore.ok = true;
  } catch (const Error& e) {
    record.status = RunStatus::kRestorationFailed;
    record.error = std::string("restoration: ") + e.what();
  }
  restore.finished_at = UtcNow();
  record.timestamps.push_back(std::move(restore));
  return record;
}

}  // namespace dptext
