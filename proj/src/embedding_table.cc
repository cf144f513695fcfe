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

#include "dptext/embedding_table.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>

#include "text_format.h"

namespace dptext {

EmbeddingTable::EmbeddingTable(Matrix rows) : rows_(std::move(rows)) {
  if (rows_.rows() == 0 || rows_.cols() == 0) {
    throw ContractError("embedding table must have at least one row and column");
  }
  if (!rows_.allFinite()) {
    for (Eigen::Index i = 0; i < rows_.rows(); ++i) {
      if (!rows_.row(i).allFinite()) {
        throw DataError("non-finite embedding value for token " +
                        std::to_string(i));
      }
    }
  }
  per_dim_range_ = (rows_.colwise().maxCoeff() - rows_.colwise().minCoeff())
                       .transpose()
                       .cast<double>();
}

Eigen::VectorXd EmbeddingTable::DistancesFrom(
    const Eigen::Ref<const Eigen::VectorXd>& point) const {
  if (point.size() != dim()) {
    throw ContractError("DistancesFrom: dimension mismatch");
  }
  Eigen::VectorXd out(size());
  for (Eigen::Index i = 0; i < size(); ++i) {
    out(i) = (rows_.row(i).transpose().cast<double>() - point).norm();
  }
  return out;
}

std::vector<TokenId> ArgsortByDistance(const Eigen::VectorXd& distances) {
  std::vector<TokenId> order(static_cast<std::size_t>(distances.size()));
  std::iota(order.begin(), order.end(), TokenId{0});
  std::stable_sort(order.begin(), order.end(), [&](TokenId a, TokenId b) {
    return distances(a) < distances(b);
  });
  return order;
}

std::vector<TokenId> EmbeddingTable::Nearest(
    const Eigen::Ref<const Eigen::VectorXd>& point, std::size_t k) const {
  const Eigen::VectorXd d = DistancesFrom(point);
  std::vector<TokenId> order(static_cast<std::size_t>(d.size()));
  std::iota(order.begin(), order.end(), TokenId{0});
  k = std::min(k, order.size());
  auto less = [&](TokenId a, TokenId b) {
    return d(a) < d(b) || (d(a) == d(b) && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                    order.end(), less);
  order.resize(k);
  return order;
}

EmbeddingTable TableFromPoints(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw ContractError("TableFromPoints: no points");
  const std::size_t dim = points.front().size();
  EmbeddingTable::Matrix m(static_cast<Eigen::Index>(points.size()),
                           static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) {
      throw ContractError("TableFromPoints: ragged input");
    }
    for (std::size_t k = 0; k < dim; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          static_cast<float>(points[i][k]);
    }
  }
  return EmbeddingTable(std::move(m));
}

EmbeddingTable ReadEmbeddings(std::istream& in, std::size_t vocab_size) {
  const auto header = internal::ReadHeader(in, "DPTEXT-EMB", 2);
  const std::uint64_t count = header[0];
  const std::uint64_t dim = header[1];
  if (dim < 1) throw FormatError("embedding dim must be >= 1");
  if (count != vocab_size) {
    throw FormatError("embedding file declares " + std::to_string(count) +
                      " tokens, vocabulary has " + std::to_string(vocab_size));
  }
  EmbeddingTable::Matrix m(static_cast<Eigen::Index>(count),
                           static_cast<Eigen::Index>(dim));
  std::vector<bool> seen(count, false);
  std::size_t rows_read = 0;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = internal::StripCr(line);
    if (body.empty()) continue;
    const std::size_t tab = body.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError("expected '<id>\\t<floats>'", line_no);
    }
    auto id = internal::ParseInt<std::uint64_t>(body.substr(0, tab));
    if (!id) throw ParseError("bad token id", line_no);
    if (*id >= count) {
      throw FormatError("token id " + std::to_string(*id) + " on line " +
                        std::to_string(line_no) + " exceeds declared count");
    }
    if (seen[*id]) {
      throw FormatError("duplicate embedding for token " + std::to_string(*id));
    }
    seen[*id] = true;
    const char* p = body.data() + tab + 1;
    const char* end = body.data() + body.size();
    std::uint64_t k = 0;
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      float v = 0.0f;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec == std::errc::result_out_of_range) {
        throw DataError("non-finite embedding value on line " +
                        std::to_string(line_no));
      }
      if (ec != std::errc()) throw ParseError("bad float", line_no);
      if (!std::isfinite(v)) {
        throw DataError("non-finite embedding value on line " +
                        std::to_string(line_no));
      }
      if (k >= dim) {
        throw FormatError("line " + std::to_string(line_no) + " has more than " +
                          std::to_string(dim) + " values");
      }
      m(static_cast<Eigen::Index>(*id), static_cast<Eigen::Index>(k++)) = v;
      p = next;
    }
    if (k != dim) {
      throw FormatError("line " + std::to_string(line_no) + " has " +
                        std::to_string(k) + " values, expected " +
                        std::to_string(dim));
    }
    ++rows_read;
  }
  if (rows_read != count) {
    throw FormatError("embedding file declares " + std::to_string(count) +
                      " rows, found " + std::to_string(rows_read));
  }
  return EmbeddingTable(std::move(m));
}

EmbeddingTable LoadEmbeddings(const std::filesystem::path& path,
                              const Vocabulary& vocab) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return ReadEmbeddings(in, vocab.size());
}

void WriteEmbeddings(const EmbeddingTable& table, std::ostream& out) {
  out << "DPTEXT-EMB v1 " << table.size() << ' ' << table.dim() << '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < table.size(); ++i) {
    out << i << '\t';
    for (Eigen::Index k = 0; k < table.dim(); ++k) {
      if (k) out << ' ';
      auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), table.rows()(i, k));
      out.write(buf, end - buf);
    }
    out << '\n';
  }
}

}  // namespace dptext
