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

#include "dptext/metrics.h"

#include <set>

namespace dptext {

std::string_view ToString(DiversityForm form) {
  return form == DiversityForm::kProduct ? "product" : "sum";
}

std::optional<double> NgramUniqueRatio(std::span<const std::string> tokens,
                                       std::size_t n) {
  if (n < 1 || tokens.size() < n) return std::nullopt;
  std::set<std::vector<std::string>> unique;
  const std::size_t total = tokens.size() - n + 1;
  for (std::size_t i = 0; i < total; ++i) {
    unique.emplace(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                   tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
  }
  return static_cast<double>(unique.size()) / static_cast<double>(total);
}

std::size_t Levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t substitute = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, substitute});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double Diversity(std::span<const std::string> tokens, DiversityForm form) {
  if (tokens.empty()) throw ContractError("Diversity: empty input");
  double acc = form == DiversityForm::kProduct ? 1.0 : 0.0;
  for (std::size_t n = 2; n <= 4; ++n) {
    if (auto r = NgramUniqueRatio(tokens, n)) {
      acc = form == DiversityForm::kProduct ? acc * *r : acc + *r;
    }
  }
  return acc;
}

nlohmann::json MetricReportToJson(const MetricReport& r) {
  nlohmann::json j;
  j["run_id"] = r.run_id;
  j["diversity"] = r.diversity;
  j["diversity_formula"] = ToString(r.diversity_formula);
  j["diversity_alt"] = r.diversity_alt;
  j["diversity_alt_formula"] = ToString(r.diversity_formula == DiversityForm::kProduct
                                            ? DiversityForm::kSum
                                            : DiversityForm::kProduct);
  j["coherence"] = r.coherence ? nlohmann::json(*r.coherence) : nlohmann::json(nullptr);
  j["edit_distance"] = r.edit_distance;
  j["edit_distances"] = r.edit_distances;
  j["counts"] = {{"tokens", r.tokens}, {"chars", r.chars}};
  j["mauve"] = r.mauve ? nlohmann::json(*r.mauve) : nlohmann::json(nullptr);
  return j;
}

}  // namespace dptext
