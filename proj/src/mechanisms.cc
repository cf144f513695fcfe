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

#include "dptext/mechanisms.h"

#include <algorithm>
#include <cmath>

#include "dptext/dp_core.h"
#include "dptext/errors.h"

namespace dptext {

std::string_view ToString(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kRantext:
      return "rantext";
    case MechanismKind::kTopK:
      return "topk";
    case MechanismKind::kGlobal:
      return "global";
  }
  return "unknown";
}

std::string_view ToString(ScoringMode mode) {
  switch (mode) {
    case ScoringMode::kOriginDistance:
      return "origin-distance";
    case ScoringMode::kNoisyDistance:
      return "noisy-distance";
  }
  return "unknown";
}

MechanismKind ParseMechanismKind(std::string_view name) {
  if (name == "rantext") return MechanismKind::kRantext;
  if (name == "topk") return MechanismKind::kTopK;
  if (name == "global") return MechanismKind::kGlobal;
  throw ContractError("unknown mechanism kind '" + std::string(name) +
                      "' (expected rantext, topk or global)");
}

ScoringMode ParseScoringMode(std::string_view name) {
  if (name == "origin-distance") return ScoringMode::kOriginDistance;
  if (name == "noisy-distance") return ScoringMode::kNoisyDistance;
  throw ContractError("unknown scoring mode '" + std::string(name) +
                      "' (expected origin-distance or noisy-distance)");
}

void MechanismConfig::Validate() const {
  if (!(epsilon_em >= 0.0) || !std::isfinite(epsilon_em)) {
    throw ContractError("epsilon_em must be finite and >= 0");
  }
  if (kind == MechanismKind::kRantext) {
    const double eps_lap = effective_epsilon_lap();
    if (!(eps_lap > 0.0) || !std::isfinite(eps_lap)) {
      throw ContractError("epsilon_lap must be finite and > 0");
    }
    if (laplace_sensitivity && !(*laplace_sensitivity > 0.0)) {
      throw ContractError("laplace_sensitivity must be positive or auto");
    }
  }
  if (kind == MechanismKind::kTopK && top_k < 1) {
    throw ContractError("top_k must be >= 1");
  }
}

double MechanismConfig::LaplaceScale(const EmbeddingTable& table) const {
  const double sensitivity =
      laplace_sensitivity.value_or(table.max_per_dim_range());
  if (!(sensitivity > 0.0)) {
    throw ContractError(
        "automatic Laplace sensitivity is zero (every embedding coordinate is "
        "constant); set laplace_sensitivity explicitly");
  }
  return sensitivity / effective_epsilon_lap();
}

NeighborOrder ComputeNeighborOrder(TokenId origin, const EmbeddingTable& table) {
  table.CheckId(origin);
  const Eigen::VectorXd d = table.DistancesFrom(origin);
  std::vector<TokenId> sorted = ArgsortByDistance(d);
  NeighborOrder order;
  order.ids.reserve(sorted.size());
  order.ids.push_back(origin);
  for (TokenId id : sorted) {
    if (id != origin) order.ids.push_back(id);
  }
  order.distances.resize(static_cast<Eigen::Index>(order.ids.size()));
  for (std::size_t i = 0; i < order.ids.size(); ++i) {
    order.distances(static_cast<Eigen::Index>(i)) = d(order.ids[i]);
  }
  order.distances(0) = 0.0;
  return order;
}

std::shared_ptr<const NeighborOrder> AdjacencyIndex::For(TokenId origin) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(origin);
    if (it != cache_.end()) return it->second;
  }
  auto order =
      std::make_shared<const NeighborOrder>(ComputeNeighborOrder(origin, *table_));
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(origin, std::move(order)).first->second;
}

namespace {

std::shared_ptr<const NeighborOrder> OrderFor(TokenId origin,
                                              const EmbeddingTable& table,
                                              const AdjacencyIndex* index) {
  if (index != nullptr) {
    if (&index->table() != &table) {
      throw ContractError("AdjacencyIndex built for a different table");
    }
    return index->For(origin);
  }
  return std::make_shared<const NeighborOrder>(
      ComputeNeighborOrder(origin, table));
}

// First `count` entries of `order`.
void TakePrefix(const NeighborOrder& order, std::size_t count,
                AdjacencySample& sample) {
  sample.candidates.assign(order.ids.begin(),
                           order.ids.begin() + static_cast<std::ptrdiff_t>(count));
  sample.distances = order.distances.head(static_cast<Eigen::Index>(count));
}

std::size_t CountWithin(const NeighborOrder& order, double radius) {
  // distances[1..] are sorted ascending; the origin always qualifies.
  const double* begin = order.distances.data() + 1;
  const double* end = order.distances.data() + order.distances.size();
  return 1 + static_cast<std::size_t>(std::upper_bound(begin, end, radius) - begin);
}

}  // namespace

AdjacencySample RandomAdjacencyFromRadius(TokenId origin,
                                          const EmbeddingTable& table,
                                          double radius,
                                          const AdjacencyIndex* index) {
  if (!(radius >= 0.0)) throw ContractError("radius must be >= 0");
  const auto order = OrderFor(origin, table, index);
  AdjacencySample sample;
  sample.origin = origin;
  sample.radius = radius;
  TakePrefix(*order, CountWithin(*order, radius), sample);
  return sample;
}

AdjacencySample RandomAdjacencyFromNoise(
    TokenId origin, const EmbeddingTable& table,
    const Eigen::Ref<const Eigen::VectorXd>& noise,
    const AdjacencyIndex* index) {
  if (noise.size() != table.dim()) {
    throw ContractError("noise dimension does not match embedding dimension");
  }
  AdjacencySample sample =
      RandomAdjacencyFromRadius(origin, table, noise.norm(), index);
  sample.perturbed_embedding = table.Embedding(origin) + noise;
  return sample;
}

AdjacencySample ComputeRandomAdjacency(TokenId origin,
                                       const EmbeddingTable& table,
                                       const MechanismConfig& cfg, Rng& rng,
                                       const AdjacencyIndex* index) {
  if (cfg.kind != MechanismKind::kRantext) {
    throw ContractError("ComputeRandomAdjacency requires kind rantext");
  }
  const Eigen::VectorXd noise =
      SampleLaplaceVector(table.dim(), cfg.LaplaceScale(table), rng);
  return RandomAdjacencyFromNoise(origin, table, noise, index);
}

Eigen::VectorXd ScoreCandidates(const AdjacencySample& sample,
                                const EmbeddingTable& table, ScoringMode mode) {
  const auto n = static_cast<Eigen::Index>(sample.candidates.size());
  if (n == 0) throw ContractError("ScoreCandidates: no candidates");
  if (n == 1) return Eigen::VectorXd::Ones(1);

  if (mode == ScoringMode::kOriginDistance) {
    Eigen::VectorXd d = sample.distances;
    if (d.size() != n) {
      d.resize(n);
      const Eigen::VectorXd origin = table.Embedding(sample.origin);
      for (Eigen::Index i = 0; i < n; ++i) {
        d(i) = Distance(table.Embedding(sample.candidates[i]), origin);
      }
    }
    return (1.0 - MinMaxNormalize(d).array()).min(1.0).max(0.0).matrix();
  }

  if (sample.perturbed_embedding.size() != table.dim()) {
    throw ContractError("noisy-distance scoring needs the perturbed embedding");
  }
  const Eigen::VectorXd origin = table.Embedding(sample.origin);
  if (origin == sample.perturbed_embedding) return Eigen::VectorXd::Ones(n);
  Eigen::VectorXd to_noisy(n);
  Eigen::Index origin_pos = -1;
  for (Eigen::Index i = 0; i < n; ++i) {
    const TokenId id = sample.candidates[static_cast<std::size_t>(i)];
    if (id == sample.origin) origin_pos = i;
    to_noisy(i) = Distance(table.Embedding(id), sample.perturbed_embedding);
  }
  if (origin_pos < 0) throw ContractError("origin missing from candidates");
  const Eigen::VectorXd normalized = MinMaxNormalize(to_noisy);
  const double denom = normalized(origin_pos);
  if (denom == 0.0) return Eigen::VectorXd::Ones(n);
  return (normalized.array() / denom).min(1.0).max(0.0).matrix();
}

TokenPerturbation PerturbToken(TokenId origin, const EmbeddingTable& table,
                               const MechanismConfig& cfg, Rng& rng,
                               const AdjacencyIndex* index) {
  TokenPerturbation result;
  ScoringMode mode = ScoringMode::kOriginDistance;
  switch (cfg.kind) {
    case MechanismKind::kRantext:
      result.sample = ComputeRandomAdjacency(origin, table, cfg, rng, index);
      mode = cfg.scoring_mode;
      break;
    case MechanismKind::kTopK: {
      const auto order = OrderFor(origin, table, index);
      result.sample.origin = origin;
      TakePrefix(*order, std::min(cfg.top_k, order->ids.size()), result.sample);
      result.sample.radius = result.sample.distances.maxCoeff();
      break;
    }
    case MechanismKind::kGlobal: {
      const auto order = OrderFor(origin, table, index);
      result.sample.origin = origin;
      TakePrefix(*order, order->ids.size(), result.sample);
      result.sample.radius = result.sample.distances.maxCoeff();
      break;
    }
  }
  result.sample.scores = ScoreCandidates(result.sample, table, mode);
  result.sample.probs =
      ExpMechanismProbs(result.sample.scores, cfg.epsilon_em, /*delta_u=*/1.0);
  const Eigen::Index pick = SampleCategorical(result.sample.probs, rng);
  result.output = result.sample.candidates[static_cast<std::size_t>(pick)];
  return result;
}

std::vector<PerturbedDocument> PerturbDocument(
    std::span<const TokenId> doc, const EmbeddingTable& table,
    const MechanismConfig& cfg, std::size_t n_docs, const Rng& rng,
    const AdjacencyIndex* index) {
  if (n_docs < 1) throw ContractError("PerturbDocument: n_docs must be >= 1");
  cfg.Validate();
  for (TokenId id : doc) table.CheckId(id);
  std::vector<PerturbedDocument> out(n_docs);
  for (std::size_t j = 1; j <= n_docs; ++j) {
    PerturbedDocument& pd = out[j - 1];
    pd.doc_index = j;
    pd.original_ids.assign(doc.begin(), doc.end());
    pd.perturbed_ids.reserve(doc.size());
    pd.adjacency_sizes.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
      Rng token_rng = rng.Child(j, i);
      TokenPerturbation tp = PerturbToken(doc[i], table, cfg, token_rng, index);
      pd.perturbed_ids.push_back(tp.output);
      pd.adjacency_sizes.push_back(tp.sample.candidates.size());
    }
  }
  return out;
}

}  // namespace dptext
