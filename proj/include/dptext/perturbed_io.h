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

#ifndef DPTEXT_PERTURBED_IO_H_
#define DPTEXT_PERTURBED_IO_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "dptext/mechanisms.h"
#include "dptext/vocabulary.h"

namespace dptext {

nlohmann::json MechanismConfigToJson(const MechanismConfig& cfg);
MechanismConfig MechanismConfigFromJson(const nlohmann::json& j);

// Serializes `text` as a JSON string. Bytes that are not valid UTF-8 are
// replaced with U+FFFD; use JsonBytes when the exact bytes matter.
nlohmann::json JsonText(const std::string& text);
bool IsValidUtf8(const std::string& text);

// One line of a perturbed-document JSONL file.
struct PerturbedRecord {
  std::size_t doc_index = 1;
  // Absent when the batch was written with redaction.
  std::optional<TokenIdSeq> original_ids;
  TokenIdSeq perturbed_ids;
  std::vector<std::size_t> adjacency_sizes;
  std::uint64_t seed = 0;
  nlohmann::json config;
};

// One JSON object per line: doc_index, original_ids (unless `redact`),
// perturbed_ids, perturbed_text (when `vocab` is given), adjacency_sizes,
// seed, config.
void WritePerturbedJsonl(std::ostream& out,
                         std::span<const PerturbedDocument> docs,
                         std::uint64_t seed, const nlohmann::json& config,
                         bool redact, const Vocabulary* vocab = nullptr);

// Throws ParseError with the 1-based line number on malformed input.
std::vector<PerturbedRecord> ReadPerturbedJsonl(std::istream& in);

}  // namespace dptext

#endif  // DPTEXT_PERTURBED_IO_H_
