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

#ifndef DPTEXT_RUN_RECORD_H_
#define DPTEXT_RUN_RECORD_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "dptext/vocabulary.h"

namespace dptext {

enum class RunStatus { kOk, kRemoteFailed, kRestorationFailed };

std::string_view ToString(RunStatus status);
RunStatus ParseRunStatus(std::string_view name);

struct PerturbedText {
  std::size_t doc_index = 1;
  std::string text;
  TokenIdSeq ids;
};

struct CallTiming {
  std::string label;  // "remote:<j>" or "restore"
  std::string started_at;
  std::string finished_at;
  bool ok = false;
};

// Provenance of one perturb -> infer -> restore run.
struct RunRecord {
  std::string run_id;
  RunStatus status = RunStatus::kOk;
  std::optional<std::string> error;
  std::string raw_document;
  std::string instruction;
  std::string restoration_instruction;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::vector<PerturbedText> perturbed;
  // One slot per perturbed document; empty when that call did not finish.
  std::vector<std::optional<std::string>> generations;
  std::optional<std::string> restored;
  std::vector<CallTiming> timestamps;
};

// Strings that are not valid UTF-8 are stored base64-encoded under a
// sibling `<field>_base64` key so the round trip is exact.
nlohmann::json RunRecordToJson(const RunRecord& record);
RunRecord RunRecordFromJson(const nlohmann::json& j);

// Writes `<runs_dir>/<run_id>.json` (pretty-printed) and returns the path.
std::filesystem::path SaveRunRecord(const RunRecord& record,
                                    const std::filesystem::path& runs_dir);
RunRecord LoadRunRecord(const std::filesystem::path& path);

}  // namespace dptext

#endif  // DPTEXT_RUN_RECORD_H_
