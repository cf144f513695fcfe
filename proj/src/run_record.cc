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

#include "dptext/run_record.h"

#include <fstream>

#include "dptext/base64.h"
#include "dptext/errors.h"
#include "dptext/perturbed_io.h"

namespace dptext {

using nlohmann::json;

std::string_view ToString(RunStatus status) {
  switch (status) {
    case RunStatus::kOk:
      return "ok";
    case RunStatus::kRemoteFailed:
      return "remote_failed";
    case RunStatus::kRestorationFailed:
      return "restoration_failed";
  }
  return "unknown";
}

RunStatus ParseRunStatus(std::string_view name) {
  if (name == "ok") return RunStatus::kOk;
  if (name == "remote_failed") return RunStatus::kRemoteFailed;
  if (name == "restoration_failed") return RunStatus::kRestorationFailed;
  throw ParseError("unknown run status '" + std::string(name) + "'");
}

namespace {

void PutText(json& j, const std::string& key, const std::string& value) {
  if (IsValidUtf8(value)) {
    j[key] = value;
  } else {
    j[key] = JsonText(value);
    j[key + "_base64"] = Base64Encode(value);
  }
}

std::string GetText(const json& j, const std::string& key) {
  const std::string b64_key = key + "_base64";
  if (j.contains(b64_key)) {
    auto decoded = Base64Decode(j[b64_key].get<std::string>());
    if (!decoded) throw ParseError("bad base64 in " + b64_key);
    return *decoded;
  }
  return j.at(key).get<std::string>();
}

}  // namespace

json RunRecordToJson(const RunRecord& r) {
  json j;
  j["run_id"] = r.run_id;
  j["status"] = ToString(r.status);
  j["error"] = r.error ? json(*r.error) : json(nullptr);
  PutText(j, "raw_document", r.raw_document);
  j["instruction"] = r.instruction;
  j["restoration_instruction"] = r.restoration_instruction;
  j["config"] = r.config;
  j["seed"] = r.seed;
  j["perturbed"] = json::array();
  for (const auto& p : r.perturbed) {
    json e;
    e["doc_index"] = p.doc_index;
    PutText(e, "text", p.text);
    e["ids"] = p.ids;
    j["perturbed"].push_back(std::move(e));
  }
  j["generations"] = json::array();
  for (const auto& g : r.generations) {
    if (!g) {
      j["generations"].push_back(nullptr);
      continue;
    }
    json e;
    PutText(e, "text", *g);
    j["generations"].push_back(std::move(e));
  }
  if (r.restored) {
    json e;
    PutText(e, "text", *r.restored);
    j["restored"] = std::move(e);
  } else {
    j["restored"] = nullptr;
  }
  j["timestamps"] = json::array();
  for (const auto& t : r.timestamps) {
    j["timestamps"].push_back({{"label", t.label},
                               {"started_at", t.started_at},
                               {"finished_at", t.finished_at},
                               {"ok", t.ok}});
  }
  return j;
}

RunRecord RunRecordFromJson(const json& j) {
  RunRecord r;
  try {
    r.run_id = j.at("run_id").get<std::string>();
    r.status = ParseRunStatus(j.at("status").get<std::string>());
    if (!j.at("error").is_null()) r.error = j["error"].get<std::string>();
    r.raw_document = GetText(j, "raw_document");
    r.instruction = j.at("instruction").get<std::string>();
    r.restoration_instruction = j.at("restoration_instruction").get<std::string>();
    r.config = j.at("config");
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& e : j.at("perturbed")) {
      r.perturbed.push_back({e.at("doc_index").get<std::size_t>(),
                             GetText(e, "text"), e.at("ids").get<TokenIdSeq>()});
    }
    for (const auto& e : j.at("generations")) {
      if (e.is_null()) {
        r.generations.emplace_back();
      } else {
        r.generations.emplace_back(GetText(e, "text"));
      }
    }
    if (!j.at("restored").is_null()) r.restored = GetText(j["restored"], "text");
    for (const auto& e : j.at("timestamps")) {
      r.timestamps.push_back({e.at("label").get<std::string>(),
                              e.at("started_at").get<std::string>(),
                              e.at("finished_at").get<std::string>(),
                              e.at("ok").get<bool>()});
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("run record: ") + e.what());
  }
  return r;
}

std::filesystem::path SaveRunRecord(const RunRecord& record,
                                    const std::filesystem::path& runs_dir) {
  std::filesystem::create_directories(runs_dir);
  const auto path = runs_dir / (record.run_id + ".json");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << RunRecordToJson(record).dump(2) << '\n';
  return path;
}

RunRecord LoadRunRecord(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return RunRecordFromJson(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace dptext
