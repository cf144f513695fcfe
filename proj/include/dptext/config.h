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

#ifndef DPTEXT_CONFIG_H_
#define DPTEXT_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "dptext/llm_client.h"
#include "dptext/mechanisms.h"

namespace dptext {

// Everything a command needs. Loaded from a `key = value` file with
// `[section]` headers:
//
//   seed = 7
//   [paths]      vocab, embeddings, merges, runs_dir
//   [vocab]      prefix            (keep only the first N tokens)
//   [mechanism]  kind, epsilon, epsilon_lap, sensitivity (number | auto),
//                scoring, top_k, n_docs
//   [remote]     base_url, model, temperature, max_tokens, api_key_env,
//                timeout, max_concurrency
//   [restore]    same keys as [remote]
//   [attack]     k, chunk_size, mask_url
struct AppConfig {
  std::filesystem::path vocab_path;
  std::filesystem::path embeddings_path;
  std::optional<std::filesystem::path> merges_path;
  std::filesystem::path runs_dir = "runs";
  std::optional<std::size_t> vocab_prefix;

  MechanismConfig mechanism;
  std::size_t n_docs = 3;

  LlmEndpointConfig remote = LlmEndpointConfig::Remote();
  LlmEndpointConfig restore = LlmEndpointConfig::Restoration();

  std::size_t attack_k = 10;
  std::size_t attack_chunk_size = 64;
  std::optional<std::string> mask_url;

  std::optional<std::uint64_t> seed;
};

// Throws ConfigError on unknown sections or keys and on bad values.
// Relative paths are resolved against `base_dir`.
AppConfig ParseAppConfig(std::istream& in,
                         const std::filesystem::path& base_dir = {});
AppConfig LoadAppConfig(const std::filesystem::path& path);

nlohmann::json EndpointToJson(const LlmEndpointConfig& e);

}  // namespace dptext

#endif  // DPTEXT_CONFIG_H_
