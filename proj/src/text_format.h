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

#ifndef DPTEXT_SRC_TEXT_FORMAT_H_
#define DPTEXT_SRC_TEXT_FORMAT_H_

// Helpers shared by the line-oriented DPTEXT-* file readers.

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dptext/errors.h"

namespace dptext::internal {

template <typename Int>
std::optional<Int> ParseInt(std::string_view s) {
  Int value{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return value;
}

inline std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::string_view StripCr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

// Reads `<magic> v1 <n0> <n1> ...` and returns the numeric fields.
inline std::vector<std::uint64_t> ReadHeader(std::istream& in,
                                             std::string_view magic,
                                             std::size_t num_fields) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("missing " + std::string(magic) + " header", 1);
  }
  const auto parts = Split(StripCr(line), ' ');
  if (parts.size() != 2 + num_fields || parts[0] != magic || parts[1] != "v1") {
    throw ParseError("expected header '" + std::string(magic) + " v1 ...'", 1);
  }
  std::vector<std::uint64_t> fields;
  for (std::size_t i = 0; i < num_fields; ++i) {
    auto v = ParseInt<std::uint64_t>(parts[2 + i]);
    if (!v) throw ParseError("bad header field '" + std::string(parts[2 + i]) + "'", 1);
    fields.push_back(*v);
  }
  return fields;
}

}  // namespace dptext::internal

#endif  // DPTEXT_SRC_TEXT_FORMAT_H_
