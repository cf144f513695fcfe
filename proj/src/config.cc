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

#include "dptext/config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <set>

#include "dptext/errors.h"

namespace dptext {
namespace {

namespace pt = boost::property_tree;

template <typename T>
T Number(const std::string& key, const std::string& text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("bad value for " + key + ": '" + text + "'");
  }
  return value;
}

std::filesystem::path Resolve(const std::filesystem::path& base,
                              const std::string& value) {
  std::filesystem::path p(value);
  if (p.is_relative() && !base.empty()) return base / p;
  return p;
}

void ApplyEndpoint(const std::string& section, const std::string& key,
                   const std::string& value, LlmEndpointConfig& e) {
  const std::string full = section + "." + key;
  if (key == "base_url") {
    e.base_url = value;
  } else if (key == "model") {
    e.model_name = value;
  } else if (key == "temperature") {
    e.temperature = Number<double>(full, value);
  } else if (key == "max_tokens") {
    e.max_output_tokens = Number<int>(full, value);
  } else if (key == "api_key_env") {
    e.api_key_env = value;
  } else if (key == "timeout") {
    e.timeout_seconds = Number<double>(full, value);
  } else if (key == "max_concurrency") {
    e.max_concurrency = Number<std::size_t>(full, value);
  } else {
    throw ConfigError("unknown key " + full);
  }
}

}  // namespace

AppConfig ParseAppConfig(std::istream& in, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  AppConfig cfg;
  for (const auto& [section, node] : tree) {
    static const std::set<std::string> kSections = {
        "paths", "vocab", "mechanism", "remote", "restore", "attack"};
    if (node.empty() && node.data().empty() && kSections.contains(section)) {
      continue;
    }
    if (node.empty()) {
      // Top-level key.
      if (section == "seed") {
        cfg.seed = Number<std::uint64_t>("seed", node.data());
        continue;
      }
      throw ConfigError("unknown top-level key " + section);
    }
    for (const auto& [key, child] : node) {
      const std::string value = child.data();
      const std::string full = section + "." + key;
      if (section == "paths") {
        if (key == "vocab") {
          cfg.vocab_path = Resolve(base_dir, value);
        } else if (key == "embeddings") {
          cfg.embeddings_path = Resolve(base_dir, value);
        } else if (key == "merges") {
          cfg.merges_path = Resolve(base_dir, value);
        } else if (key == "runs_dir") {
          cfg.runs_dir = Resolve(base_dir, value);
        } else {
          throw ConfigError("unknown key " + full);
        }
      } else if (section == "vocab") {
        if (key != "prefix") throw ConfigError("unknown key " + full);
        cfg.vocab_prefix = Number<std::size_t>(full, value);
      } else if (section == "mechanism") {
        if (key == "kind") {
          cfg.mechanism.kind = ParseMechanismKind(value);
        } else if (key == "epsilon") {
          cfg.mechanism.epsilon_em = Number<double>(full, value);
        } else if (key == "epsilon_lap") {
          cfg.mechanism.epsilon_lap = Number<double>(full, value);
        } else if (key == "sensitivity") {
          if (value == "auto") {
            cfg.mechanism.laplace_sensitivity.reset();
          } else {
            cfg.mechanism.laplace_sensitivity = Number<double>(full, value);
          }
        } else if (key == "scoring") {
          cfg.mechanism.scoring_mode = ParseScoringMode(value);
        } else if (key == "top_k") {
          cfg.mechanism.top_k = Number<std::size_t>(full, value);
        } else if (key == "n_docs") {
          cfg.n_docs = Number<std::size_t>(full, value);
        } else {
          throw ConfigError("unknown key " + full);
        }
      } else if (section == "remote") {
        ApplyEndpoint(section, key, value, cfg.remote);
      } else if (section == "restore") {
        ApplyEndpoint(section, key, value, cfg.restore);
      } else if (section == "attack") {
        if (key == "k") {
          cfg.attack_k = Number<std::size_t>(full, value);
        } else if (key == "chunk_size") {
          cfg.attack_chunk_size = Number<std::size_t>(full, value);
        } else if (key == "mask_url") {
          cfg.mask_url = value;
        } else {
          throw ConfigError("unknown key " + full);
        }
      } else {
        throw ConfigError("unknown section [" + section + "]");
      }
    }
  }
  return cfg;
}

AppConfig LoadAppConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return ParseAppConfig(in, path.parent_path());
}

nlohmann::json EndpointToJson(const LlmEndpointConfig& e) {
  return {{"base_url", e.base_url},
          {"model", e.model_name},
          {"temperature", e.temperature},
          {"max_tokens", e.max_output_tokens},
          {"api_key_env", e.api_key_env},
          {"timeout", e.timeout_seconds},
          {"max_concurrency", e.max_concurrency}};
}

}  // namespace dptext
