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

#include "dptext/prompts.h"

#include <cctype>

#include "json.hpp"
#include "dptext/errors.h"

namespace dptext {
namespace {

constexpr std::string_view kGptAttackHead =
    "Given a list of tokens, denoted as \"INPUTS,\" which have been subjected "
    "to text perturbation through differential privacy techniques, the task is "
    "to revert each token in the list to its most likely original token. For "
    "each perturbed token, provide the most likely original tokens from which "
    "it could have been transformed.\n"
    "As an example, consider the list \"INPUTS\": [\"Privacy\", \"LLM\", "
    "\"Text\"]. The desired output format should be:\n"
    "[\n"
    "[\"Prediction1\"], # Corresponding to \"Privacy\"\n"
    "[\"Prediction2\"], # Corresponding to \"LLM\"\n"
    "[\"Prediction3\"] # Corresponding to \"Text\"\n"
    "]\n"
    "Here, \"Prediction\" represents the most plausible original tokens prior "
    "to perturbation.\n"
    "For the given list of \"INPUTS\":\n";

constexpr std::string_view kGptAttackTail =
    "\nGenerate predictions for each token in the list, without exception. "
    "Ensure that exactly the most likely predictions are produced for each "
    "token.";

std::string JsonString(const std::string& s) {
  return nlohmann::json(s).dump(-1, ' ', false,
                                nlohmann::json::error_handler_t::replace);
}

// Removes `#` comments outside string literals.
std::string StripComments(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool in_string = false;
  bool escaped = false;
  bool in_comment = false;
  for (char c : text) {
    if (in_comment) {
      if (c == '\n') {
        in_comment = false;
        out += c;
      }
      continue;
    }
    if (in_string) {
      out += c;
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '#') {
      in_comment = true;
      continue;
    }
    if (c == '"') in_string = true;
    out += c;
  }
  return out;
}

// Drops commas that directly precede a closing bracket.
std::string DropTrailingCommas(std::string_view text) {
  std::string out;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      out += c;
      continue;
    }
    if (c == '"') in_string = true;
    if (c == ',') {
      std::size_t k = i + 1;
      while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
      if (k < text.size() && text[k] == ']') continue;
    }
    out += c;
  }
  return out;
}

// Balanced bracket span starting at `start` (which must hold '['), honoring
// string literals. npos when unbalanced.
std::size_t MatchBracket(std::string_view text, std::size_t start) {
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '[') {
      ++depth;
    } else if (c == ']') {
      if (--depth == 0) return i;
    }
  }
  return std::string_view::npos;
}

}  // namespace

std::string BuildInferencePrompt(std::string_view document) {
  std::string p(kInferenceInstruction);
  p += "\n- Prefix Text:\n";
  p += document;
  return p;
}

std::string BuildRestorationPrompt(std::string_view document,
                                   std::span<const std::string> generations) {
  if (generations.empty()) {
    throw ContractError("BuildRestorationPrompt: no generations");
  }
  std::string p(kInferenceInstruction);
  p += ' ';
  p += kRestorationInstruction;
  p += "\n- Prefix Text:\n";
  p += document;
  p += "\n- Perturbed Results:";
  for (std::size_t j = 0; j < generations.size(); ++j) {
    p += "\n[" + std::to_string(j + 1) + "]\n";
    p += generations[j];
  }
  return p;
}

std::string RenderTokenList(std::span<const std::string> tokens) {
  std::string out = "[";
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ", ";
    out += JsonString(tokens[i]);
  }
  out += "]";
  return out;
}

std::string BuildGptAttackPrompt(std::span<const std::string> tokens) {
  if (tokens.empty()) throw ContractError("BuildGptAttackPrompt: no tokens");
  std::string p(kGptAttackHead);
  p += RenderTokenList(tokens);
  p += kGptAttackTail;
  return p;
}

std::vector<std::string> ParseGptAttackResponse(std::string_view body,
                                                std::size_t expected_count) {
  if (expected_count < 1) {
    throw ContractError("ParseGptAttackResponse: expected_count must be >= 1");
  }
  const std::string cleaned = StripComments(body);
  const std::string_view text = cleaned;
  for (std::size_t pos = text.find('['); pos != std::string_view::npos;
       pos = text.find('[', pos + 1)) {
    std::size_t k = pos + 1;
    while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
    if (k >= text.size() || text[k] != '[') continue;
    const std::size_t close = MatchBracket(text, pos);
    if (close == std::string_view::npos) break;
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(
          DropTrailingCommas(text.substr(pos, close - pos + 1)));
    } catch (const nlohmann::json::exception&) {
      continue;
    }
    if (!parsed.is_array()) continue;
    std::vector<std::string> predictions;
    bool shape_ok = true;
    for (const auto& item : parsed) {
      if (!item.is_array() || item.empty() || !item[0].is_string()) {
        shape_ok = false;
        break;
      }
      predictions.push_back(item[0].get<std::string>());
    }
    if (!shape_ok) continue;
    if (predictions.size() != expected_count) {
      throw ResponseParseError(
          "attack response lists " + std::to_string(predictions.size()) +
              " predictions, expected " + std::to_string(expected_count),
          std::string(body));
    }
    return predictions;
  }
  throw ResponseParseError("attack response contains no list of predictions",
                           std::string(body));
}

std::string FormatGptAttackResponse(std::span<const std::string> predictions) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    out += "[" + JsonString(predictions[i]) + "]";
    if (i + 1 < predictions.size()) out += ",";
    out += "\n";
  }
  out += "]";
  return out;
}

}  // namespace dptext
