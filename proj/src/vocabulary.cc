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

#include "dptext/vocabulary.h"

#include <fstream>
#include <limits>
#include <ostream>

#include "dptext/base64.h"
#include "dptext/errors.h"
#include "text_format.h"

namespace dptext {
namespace {

std::ifstream OpenOrThrow(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

TokenIdSeq TokenizeGreedy(std::string_view text, const Vocabulary& vocab) {
  TokenIdSeq ids;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t longest =
        std::min(vocab.max_token_length(), text.size() - pos);
    bool matched = false;
    for (std::size_t len = longest; len >= 1; --len) {
      if (auto id = vocab.Find(text.substr(pos, len))) {
        ids.push_back(*id);
        pos += len;
        matched = true;
        break;
      }
    }
    if (!matched) throw TokenizationError("no vocabulary token matches", pos);
  }
  return ids;
}

TokenIdSeq TokenizeBpe(std::string_view text, const Vocabulary& vocab) {
  std::vector<std::string> parts;
  parts.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    std::string byte(1, text[i]);
    if (!vocab.Find(byte)) {
      throw TokenizationError("byte missing from vocabulary", i);
    }
    parts.push_back(std::move(byte));
  }
  while (parts.size() > 1) {
    std::uint32_t best_rank = std::numeric_limits<std::uint32_t>::max();
    std::size_t best = parts.size();
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      auto rank = vocab.MergeRank(parts[i], parts[i + 1]);
      if (rank && *rank < best_rank) {
        best_rank = *rank;
        best = i;
      }
    }
    if (best == parts.size()) break;
    parts[best] += parts[best + 1];
    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(best) + 1);
  }
  TokenIdSeq ids;
  ids.reserve(parts.size());
  for (const auto& p : parts) ids.push_back(*vocab.Find(p));
  return ids;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> tokens,
                       std::vector<MergeRule> merges)
    : tokens_(std::move(tokens)) {
  if (tokens_.size() > std::numeric_limits<TokenId>::max()) {
    throw IntegrityError("vocabulary too large");
  }
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].empty()) {
      throw IntegrityError("token " + std::to_string(i) + " is empty");
    }
    auto [it, inserted] = index_.emplace(tokens_[i], static_cast<TokenId>(i));
    if (!inserted) {
      throw IntegrityError("token " + std::to_string(i) +
                           " duplicates the bytes of token " +
                           std::to_string(it->second));
    }
    max_token_length_ = std::max(max_token_length_, tokens_[i].size());
  }
  for (auto& m : merges) {
    if (!index_.contains(m.left + m.right)) {
      throw IntegrityError("merge of rank " + std::to_string(m.rank) +
                           " produces a token missing from the vocabulary");
    }
    auto [it, inserted] =
        merge_rank_.emplace(std::make_pair(m.left, m.right), m.rank);
    if (!inserted) {
      throw IntegrityError("duplicate merge at rank " + std::to_string(m.rank));
    }
  }
  merges_ = std::move(merges);
}

std::optional<TokenId> Vocabulary::Find(std::string_view bytes) const {
  auto it = index_.find(std::string(bytes));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> Vocabulary::MergeRank(
    std::string_view left, std::string_view right) const {
  auto it = merge_rank_.find(std::make_pair(std::string(left), std::string(right)));
  if (it == merge_rank_.end()) return std::nullopt;
  return it->second;
}

Vocabulary Vocabulary::WithMerges(std::vector<MergeRule> merges) const {
  return Vocabulary(tokens_, std::move(merges));
}

Vocabulary Vocabulary::Prefix(std::size_t n) const {
  if (n >= tokens_.size()) return *this;
  std::vector<std::string> kept(tokens_.begin(),
                                tokens_.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<MergeRule> merges;
  for (const auto& m : merges_) {
    auto id = Find(m.left + m.right);
    auto l = Find(m.left);
    auto r = Find(m.right);
    if (id && l && r && *id < n && *l < n && *r < n) merges.push_back(m);
  }
  return Vocabulary(std::move(kept), std::move(merges));
}

Vocabulary ReadVocabulary(std::istream& in) {
  const auto header = internal::ReadHeader(in, "DPTEXT-VOCAB", 1);
  const std::uint64_t count = header[0];
  std::vector<std::optional<std::string>> slots(count);
  std::string line;
  std::size_t line_no = 1;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = internal::StripCr(line);
    if (body.empty()) continue;
    const auto parts = internal::Split(body, '\t');
    if (parts.size() != 2) throw ParseError("expected '<id>\\t<base64>'", line_no);
    auto id = internal::ParseInt<std::uint64_t>(parts[0]);
    if (!id) throw ParseError("bad token id '" + std::string(parts[0]) + "'", line_no);
    auto bytes = Base64Decode(parts[1]);
    if (!bytes || bytes->empty()) throw ParseError("bad base64 token", line_no);
    if (*id >= count) {
      throw IntegrityError("token id " + std::to_string(*id) +
                           " outside 0.." + std::to_string(count) +
                           "-1 (ids must be contiguous)");
    }
    if (slots[*id]) {
      throw IntegrityError("duplicate token id " + std::to_string(*id) +
                           " on line " + std::to_string(line_no));
    }
    slots[*id] = std::move(*bytes);
    ++seen;
  }
  if (seen != count) {
    if (seen < count) {
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i]) {
          throw IntegrityError("token ids not contiguous: id " +
                               std::to_string(i) + " missing");
        }
      }
    }
    throw FormatError("header declares " + std::to_string(count) +
                      " tokens, file has " + std::to_string(seen));
  }
  std::vector<std::string> tokens;
  tokens.reserve(count);
  for (auto& s : slots) tokens.push_back(std::move(*s));
  return Vocabulary(std::move(tokens));
}

Vocabulary LoadVocabulary(const std::filesystem::path& path) {
  auto in = OpenOrThrow(path);
  return ReadVocabulary(in);
}

void WriteVocabulary(const Vocabulary& vocab, std::ostream& out) {
  out << "DPTEXT-VOCAB v1 " << vocab.size() << '\n';
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    out << i << '\t' << Base64Encode(vocab.token(static_cast<TokenId>(i)))
        << '\n';
  }
}

std::vector<MergeRule> ReadMerges(std::istream& in) {
  const auto header = internal::ReadHeader(in, "DPTEXT-MERGES", 1);
  std::vector<MergeRule> merges;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = internal::StripCr(line);
    if (body.empty()) continue;
    const auto parts = internal::Split(body, '\t');
    if (parts.size() != 3) {
      throw ParseError("expected '<rank>\\t<base64>\\t<base64>'", line_no);
    }
    auto rank = internal::ParseInt<std::uint32_t>(parts[0]);
    auto left = Base64Decode(parts[1]);
    auto right = Base64Decode(parts[2]);
    if (!rank || !left || !right || left->empty() || right->empty()) {
      throw ParseError("malformed merge entry", line_no);
    }
    merges.push_back({*rank, std::move(*left), std::move(*right)});
  }
  if (merges.size() != header[0]) {
    throw FormatError("header declares " + std::to_string(header[0]) +
                      " merges, file has " + std::to_string(merges.size()));
  }
  return merges;
}

std::vector<MergeRule> LoadMerges(const std::filesystem::path& path) {
  auto in = OpenOrThrow(path);
  return ReadMerges(in);
}

void WriteMerges(std::span<const MergeRule> merges, std::ostream& out) {
  out << "DPTEXT-MERGES v1 " << merges.size() << '\n';
  for (const auto& m : merges) {
    out << m.rank << '\t' << Base64Encode(m.left) << '\t'
        << Base64Encode(m.right) << '\n';
  }
}

TokenIdSeq Tokenize(std::string_view text, const Vocabulary& vocab) {
  if (text.empty()) return {};
  return vocab.has_merges() ? TokenizeBpe(text, vocab)
                            : TokenizeGreedy(text, vocab);
}

std::string Detokenize(std::span<const TokenId> ids, const Vocabulary& vocab) {
  std::string out;
  for (TokenId id : ids) {
    if (id >= vocab.size()) {
      throw ContractError("token id " + std::to_string(id) +
                          " outside vocabulary");
    }
    out += vocab.token(id);
  }
  return out;
}

std::vector<std::string> TokenTexts(std::span<const TokenId> ids,
                                    const Vocabulary& vocab) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (TokenId id : ids) out.push_back(vocab.token(id));
  return out;
}

}  // namespace dptext
