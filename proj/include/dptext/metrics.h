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

#ifndef DPTEXT_METRICS_H_
#define DPTEXT_METRICS_H_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "dptext/errors.h"

namespace dptext {

enum class DiversityForm {
  kProduct,  // prod_{n=2..4} unique/total, in (0, 1]
  kSum,      // sum_{n=2..4} unique/total, in (0, 3]
};

std::string_view ToString(DiversityForm form);

// unique/total n-gram ratio for one n; nullopt when tokens.size() < n.
std::optional<double> NgramUniqueRatio(std::span<const std::string> tokens,
                                       std::size_t n);

// Combines the n = 2, 3, 4 ratios. Orders longer than the input are
// skipped; with fewer than two tokens no order is defined and the result
// is the empty product (1) or empty sum (0). Throws ContractError on empty
// input.
double Diversity(std::span<const std::string> tokens,
                 DiversityForm form = DiversityForm::kProduct);

// Cosine similarity of two sentence embeddings.
template <typename DerivedA, typename DerivedB>
double Coherence(const Eigen::MatrixBase<DerivedA>& a,
                 const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) throw ContractError("Coherence: dimension mismatch");
  const Eigen::VectorXd x = a.template cast<double>().reshaped();
  const Eigen::VectorXd y = b.template cast<double>().reshaped();
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0) throw ContractError("Coherence: zero vector");
  return std::clamp(x.dot(y) / (nx * ny), -1.0, 1.0);
}

// Edit distance with unit-cost insert, delete and substitute over any two
// random-access sequences with comparable elements. Two-row DP, memory
// O(min(|a|, |b|)).
template <typename SeqA, typename SeqB>
  requires(!(std::is_convertible_v<const SeqA&, std::string_view> &&
             std::is_convertible_v<const SeqB&, std::string_view>))
std::size_t Levenshtein(const SeqA& a, const SeqB& b) {
  if (std::size(a) < std::size(b)) return Levenshtein(b, a);
  const std::size_t m = std::size(b);
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  std::size_t i = 0;
  for (const auto& x : a) {
    ++i;
    cur[0] = i;
    std::size_t j = 0;
    for (const auto& y : b) {
      ++j;
      const std::size_t substitute = prev[j - 1] + (x == y ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, substitute});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

// Byte-level distance between two strings.
std::size_t Levenshtein(std::string_view a, std::string_view b);

struct MetricReport {
  std::string run_id;
  double diversity = 0.0;
  DiversityForm diversity_formula = DiversityForm::kProduct;
  // Value of the other form, reported alongside.
  double diversity_alt = 0.0;
  std::optional<double> coherence;
  // Mean edit distance between the raw document and its perturbed copies.
  double edit_distance = 0.0;
  std::vector<std::size_t> edit_distances;
  std::size_t tokens = 0;
  std::size_t chars = 0;
  // Only populated when supplied externally.
  std::optional<double> mauve;
};

nlohmann::json MetricReportToJson(const MetricReport& report);

}  // namespace dptext

#endif  // DPTEXT_METRICS_H_
