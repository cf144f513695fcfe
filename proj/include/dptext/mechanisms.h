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

#ifndef DPTEXT_MECHANISMS_H_
#define DPTEXT_MECHANISMS_H_

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "dptext/embedding_table.h"
#include "dptext/rng.h"
#include "dptext/vocabulary.h"

namespace dptext {

enum class MechanismKind {
  kRantext,  // Laplace-randomized radius around the token embedding.
  kTopK,     // Fixed adjacency of the K nearest tokens.
  kGlobal,   // Whole vocabulary, similarity-weighted.
};

enum class ScoringMode {
  // u = 1 - minmax(d(phi(t'), phi(t))): non-increasing in distance from the
  // original token.
  kOriginDistance,
  // u = d_E(phi(t'), phi_hat(t)) / d_E(phi(t), phi_hat(t)), distances
  // min-max normalized over the candidates against the noisy embedding.
  kNoisyDistance,
};

std::string_view ToString(MechanismKind kind);
std::string_view ToString(ScoringMode mode);
MechanismKind ParseMechanismKind(std::string_view name);
ScoringMode ParseScoringMode(std::string_view name);

struct MechanismConfig {
  MechanismKind kind = MechanismKind::kRantext;
  // Exponential-mechanism epsilon.
  double epsilon_em = 1.0;
  // Laplace epsilon for the adjacency radius; falls back to epsilon_em.
  std::optional<double> epsilon_lap;
  // Per-coordinate Laplace sensitivity; nullopt selects the largest
  // per-dimension range of the embedding table.
  std::optional<double> laplace_sensitivity;
  ScoringMode scoring_mode = ScoringMode::kOriginDistance;
  std::size_t top_k = 20;

  double effective_epsilon_lap() const {
    return epsilon_lap.value_or(epsilon_em);
  }
  // Throws ContractError when a field is out of range.
  void Validate() const;
  // Laplace scale b = sensitivity / epsilon_lap.
  double LaplaceScale(const EmbeddingTable& table) const;
};

// One draw of an adjacency and the sampling distribution over it.
struct AdjacencySample {
  TokenId origin = 0;
  double radius = 0.0;
  // phi(origin) + Y. Empty for the fixed-adjacency baselines.
  Eigen::VectorXd perturbed_embedding;
  // Origin first, then ascending distance from phi(origin), ties by id.
  std::vector<TokenId> candidates;
  // d_e(phi(candidate), phi(origin)), aligned with `candidates`.
  Eigen::VectorXd distances;
  Eigen::VectorXd scores;
  Eigen::VectorXd probs;
};

// Rows of the table ordered by distance from one origin. The origin is
// always first, then ascending distance, ties by smaller id.
struct NeighborOrder {
  std::vector<TokenId> ids;
  Eigen::VectorXd distances;
};

NeighborOrder ComputeNeighborOrder(TokenId origin, const EmbeddingTable& table);

// Lazily filled per-origin NeighborOrder cache. Thread-safe. Memory grows
// by |V| entries per distinct origin queried.
class AdjacencyIndex {
 public:
  explicit AdjacencyIndex(const EmbeddingTable& table) : table_(&table) {}

  std::shared_ptr<const NeighborOrder> For(TokenId origin) const;
  const EmbeddingTable& table() const { return *table_; }

 private:
  const EmbeddingTable* table_;
  mutable std::mutex mu_;
  mutable std::unordered_map<TokenId, std::shared_ptr<const NeighborOrder>>
      cache_;
};

// Random adjacency for a given noise vector Y: radius ||Y||, candidates are
// the tokens whose embedding lies within that radius of phi(origin).
AdjacencySample RandomAdjacencyFromNoise(
    TokenId origin, const EmbeddingTable& table,
    const Eigen::Ref<const Eigen::VectorXd>& noise,
    const AdjacencyIndex* index = nullptr);

// Same with an explicit radius and no noisy embedding attached.
AdjacencySample RandomAdjacencyFromRadius(TokenId origin,
                                          const EmbeddingTable& table,
                                          double radius,
                                          const AdjacencyIndex* index = nullptr);

// Draws Y ~ Laplace(0, b)^N and returns the resulting adjacency. Scores and
// probabilities are left empty.
AdjacencySample ComputeRandomAdjacency(TokenId origin,
                                       const EmbeddingTable& table,
                                       const MechanismConfig& cfg, Rng& rng,
                                       const AdjacencyIndex* index = nullptr);

// Scores in [0, 1] for every candidate. A single candidate scores 1.
// kNoisyDistance needs `sample.perturbed_embedding`.
Eigen::VectorXd ScoreCandidates(const AdjacencySample& sample,
                                const EmbeddingTable& table, ScoringMode mode);

struct TokenPerturbation {
  TokenId output = 0;
  AdjacencySample sample;
};

// Builds the adjacency for the configured kind, scores it, and samples the
// replacement with the exponential mechanism (sensitivity 1). Baselines
// always score in kOriginDistance mode.
TokenPerturbation PerturbToken(TokenId origin, const EmbeddingTable& table,
                               const MechanismConfig& cfg, Rng& rng,
                               const AdjacencyIndex* index = nullptr);

struct PerturbedDocument {
  // 1-based, j in [1, N].
  std::size_t doc_index = 1;
  TokenIdSeq original_ids;
  TokenIdSeq perturbed_ids;
  std::vector<std::size_t> adjacency_sizes;
};

// N independent perturbations of `doc`. Token i of document j draws from
// rng.Child(j, i), so the result does not depend on evaluation order.
std::vector<PerturbedDocument> PerturbDocument(
    std::span<const TokenId> doc, const EmbeddingTable& table,
    const MechanismConfig& cfg, std::size_t n_docs, const Rng& rng,
    const AdjacencyIndex* index = nullptr);

}  // namespace dptext

#endif  // DPTEXT_MECHANISMS_H_
