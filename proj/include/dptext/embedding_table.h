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

#ifndef DPTEXT_EMBEDDING_TABLE_H_
#define DPTEXT_EMBEDDING_TABLE_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "dptext/errors.h"
#include "dptext/vocabulary.h"

namespace dptext {

// Euclidean distance between two embedding vectors of any scalar type.
template <typename DerivedA, typename DerivedB>
double Distance(const Eigen::MatrixBase<DerivedA>& a,
                const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) {
    throw ContractError("Distance: dimension mismatch (" +
                        std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
  }
  return (a.template cast<double>().reshaped() -
          b.template cast<double>().reshaped())
      .norm();
}

// Dense |V| x N table of token embeddings, one row per token id. Rows are
// stored as float, distances are evaluated in double. Immutable after
// construction.
class EmbeddingTable {
 public:
  using Matrix =
      Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  EmbeddingTable() = default;
  // Throws DataError on non-finite entries, ContractError on an empty matrix.
  explicit EmbeddingTable(Matrix rows);

  Eigen::Index size() const { return rows_.rows(); }
  Eigen::Index dim() const { return rows_.cols(); }
  const Matrix& rows() const { return rows_; }

  Eigen::VectorXd Embedding(TokenId id) const {
    CheckId(id);
    return rows_.row(id).transpose().cast<double>();
  }

  // max_i rows[i][k] - min_i rows[i][k] for every coordinate k.
  const Eigen::VectorXd& per_dim_range() const { return per_dim_range_; }
  double max_per_dim_range() const {
    return per_dim_range_.size() == 0 ? 0.0 : per_dim_range_.maxCoeff();
  }

  // Bytes held by the embedding payload.
  std::size_t payload_bytes() const {
    return static_cast<std::size_t>(rows_.size()) * sizeof(float);
  }

  // Distance from `point` to every row.
  Eigen::VectorXd DistancesFrom(const Eigen::Ref<const Eigen::VectorXd>& point) const;
  Eigen::VectorXd DistancesFrom(TokenId id) const {
    return DistancesFrom(Embedding(id));
  }

  // The k rows closest to `point`, nearest first, ties broken by smaller id.
  std::vector<TokenId> Nearest(const Eigen::Ref<const Eigen::VectorXd>& point,
                               std::size_t k) const;

  void CheckId(TokenId id) const {
    if (static_cast<Eigen::Index>(id) >= rows_.rows()) {
      throw ContractError("token id " + std::to_string(id) +
                          " outside embedding table");
    }
  }

 private:
  Matrix rows_;
  Eigen::VectorXd per_dim_range_;
};

// One row per entry of `points`; all points must share a dimension.
EmbeddingTable TableFromPoints(const std::vector<std::vector<double>>& points);

// `DPTEXT-EMB v1 <count> <dim>` then `<id>\t<f> <f> ...` per token.
// `vocab_size` must equal the declared count.
EmbeddingTable ReadEmbeddings(std::istream& in, std::size_t vocab_size);
EmbeddingTable LoadEmbeddings(const std::filesystem::path& path,
                              const Vocabulary& vocab);
void WriteEmbeddings(const EmbeddingTable& table, std::ostream& out);

// Indices of `distances` sorted ascending, ties by smaller index.
std::vector<TokenId> ArgsortByDistance(const Eigen::VectorXd& distances);

}  // namespace dptext

#endif  // DPTEXT_EMBEDDING_TABLE_H_
