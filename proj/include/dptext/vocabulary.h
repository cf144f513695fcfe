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

#ifndef DPTEXT_VOCABULARY_H_
#define DPTEXT_VOCABULARY_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dptext {

using TokenId = std::uint32_t;
using TokenIdSeq = std::vector<TokenId>;

// One BPE merge: `left` followed by `right` fuses into `left + right`.
// Lower rank merges first.
struct MergeRule {
  std::uint32_t rank = 0;
  std::string left;
  std::string right;
};

// Token vocabulary of a target LLM. Token bytes are arbitrary byte strings
// (BPE vocabularies contain partial UTF-8 sequences). Ids run 0..size()-1.
// Immutable after construction; safe to share between threads.
class Vocabulary {
 public:
  Vocabulary() = default;

  // Token i gets id i. Throws IntegrityError on duplicate or empty tokens,
  // or on a merge whose result is not itself a token.
  explicit Vocabulary(std::vector<std::string> tokens,
                      std::vector<MergeRule> merges = {});

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::string& token(TokenId id) const { return tokens_.at(id); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::optional<TokenId> Find(std::string_view bytes) const;

  bool has_merges() const { return !merges_.empty(); }
  const std::vector<MergeRule>& merges() const { return merges_; }
  // Rank of the (left, right) merge, if present.
  std::optional<std::uint32_t> MergeRank(std::string_view left,
                                         std::string_view right) const;

  std::size_t max_token_length() const { return max_token_length_; }

  Vocabulary WithMerges(std::vector<MergeRule> merges) const;

  // Vocabulary restricted to ids [0, n). Merges referencing dropped tokens
  // are dropped too.
  Vocabulary Prefix(std::size_t n) const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
  std::vector<MergeRule> merges_;
  std::map<std::pair<std::string, std::string>, std::uint32_t, std::less<>>
      merge_rank_;
  std::size_t max_token_length_ = 0;
};

// `DPTEXT-VOCAB v1 <count>` then `<id>\t<base64(token)>` per line.
Vocabulary ReadVocabulary(std::istream& in);
Vocabulary LoadVocabulary(const std::filesystem::path& path);
void WriteVocabulary(const Vocabulary& vocab, std::ostream& out);

// `DPTEXT-MERGES v1 <count>` then `<rank>\t<base64(left)>\t<base64(right)>`.
std::vector<MergeRule> ReadMerges(std::istream& in);
std::vector<MergeRule> LoadMerges(const std::filesystem::path& path);
void WriteMerges(std::span<const MergeRule> merges, std::ostream& out);

// Byte-level BPE when the vocabulary carries merges, otherwise greedy
// longest match over token bytes. Throws TokenizationError when some byte
// cannot be covered.
TokenIdSeq Tokenize(std::string_view text, const Vocabulary& vocab);

std::string Detokenize(std::span<const TokenId> ids, const Vocabulary& vocab);

// Token texts of `ids`, one string per id.
std::vector<std::string> TokenTexts(std::span<const TokenId> ids,
                                    const Vocabulary& vocab);

}  // namespace dptext

#endif  // DPTEXT_VOCABULARY_H_
