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

#include "dptext/perturbed_io.h"

#include <istream>
#include <ostream>

#include "dptext/errors.h"

namespace dptext {

using nlohmann::json;

json MechanismConfigToJson(const MechanismConfig& cfg) {
  json j;
  j["kind"] = ToString(cfg.kind);
  j["epsilon_em"] = cfg.epsilon_em;
  j["epsilon_lap"] = cfg.effective_epsilon_lap();
  if (cfg.laplace_sensitivity) {
    j["laplace_sensitivity"] = *cfg.laplace_sensitivity;
  } else {
    j["laplace_sensitivity"] = "auto";
  }
  j["scoring_mode"] = ToString(cfg.scoring_mode);
  j["top_k"] = cfg.top_k;
  return j;
}

MechanismConfig MechanismConfigFromJson(const json& j) {
  MechanismConfig cfg;
  try {
    cfg.kind = ParseMechanismKind(j.at("kind").get<std::string>());
    cfg.epsilon_em = j.at("epsilon_em").get<double>();
    if (j.contains("epsilon_lap")) cfg.epsilon_lap = j["epsilon_lap"].get<double>();
    if (j.contains("laplace_sensitivity") &&
        j["laplace_sensitivity"].is_number()) {
      cfg.laplace_sensitivity = j["laplace_sensitivity"].get<double>();
    }
    if (j.contains("scoring_mode")) {
      cfg.scoring_mode = ParseScoringMode(j["scoring_mode"].get<std::string>());
    }
    if (j.contains("top_k")) cfg.top_k = j["top_k"].get<std::size_t>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("mechanism config: ") + e.what());
  }
  return cfg;
}

bool IsValidUtf8(const std::string& text) {
  try {
    (void)json(text).dump();
    return true;
  } catch (const json::type_error&) {
    return false;
  }
}

json JsonText(const std::string& text) {
  if (IsValidUtf8(text)) return text;
  // Round-trip through the replacing serializer.
  return json::parse(
      json(text).dump(-1, ' ', false, json::error_handler_t::replace));
}

void WritePerturbedJsonl(std::ostream& out,
                         std::span<const PerturbedDocument> docs,
                         std::uint64_t seed, const json& config, bool redact,
                         const Vocabulary* vocab) {
  for (const auto& d : docs) {
    json j;
    j["doc_index"] = d.doc_index;
    if (!redact) j["original_ids"] = d.original_ids;
    j["perturbed_ids"] = d.perturbed_ids;
    if (vocab != nullptr) {
      j["perturbed_text"] = JsonText(Detokenize(d.perturbed_ids, *vocab));
    }
    j["adjacency_sizes"] = d.adjacency_sizes;
    j["seed"] = seed;
    j["config"] = config;
    out << j.dump() << '\n';
  }
}

std::vector<PerturbedRecord> ReadPerturbedJsonl(std::istream& in) {
  std::vector<PerturbedRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      PerturbedRecord r;
      r.doc_index = j.at("doc_index").get<std::size_t>();
      if (j.contains("original_ids")) {
        r.original_ids = j["original_ids"].get<TokenIdSeq>();
      }
      r.perturbed_ids = j.at("perturbed_ids").get<TokenIdSeq>();
      if (j.contains("adjacency_sizes")) {
        r.adjacency_sizes = j["adjacency_sizes"].get<std::vector<std::size_t>>();
      }
      if (j.contains("seed")) r.seed = j["seed"].get<std::uint64_t>();
      if (j.contains("config")) r.config = j["config"];
      if (r.original_ids && r.original_ids->size() != r.perturbed_ids.size()) {
        throw ParseError("original_ids and perturbed_ids differ in length",
                         line_no);
      }
      records.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return records;
}

}  // namespace dptext
