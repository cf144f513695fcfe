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

#ifndef DPTEXT_PROMPTS_H_
#define DPTEXT_PROMPTS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dptext {

// Writing instruction I sent with every perturbed document.
inline constexpr std::string_view kInferenceInstruction =
    "Your task is to extend the \"Prefix Text\".";

// Extraction and stitching instruction I' of the restoration prompt, in the
// wording of the prompt that is actually submitted.
inline constexpr std::string_view kRestorationInstruction =
    "Use the \"Perturbed Results\" as your primary source material. Extract "
    "text from the 'Perturbed Results' carefully, and integrate them into your "
    "continuation, ensuring a seamless alignment with the context established "
    "by the \"Prefix Text\".";

//   Your task is to extend the "Prefix Text".
//   - Prefix Text:
//   <document>
std::string BuildInferencePrompt(std::string_view document);

// Instruction I and I' on one line, then the prefix section, then
// `- Perturbed Results:` followed by one block per generation:
//   [1]
//   <generation 1>
//   [2]
//   ...
// Throws ContractError when `generations` is empty.
std::string BuildRestorationPrompt(std::string_view document,
                                   std::span<const std::string> generations);

// The token-recovery prompt with the tokens rendered as a JSON-style list,
// e.g. ["Privacy", "LLM", "Text"]. Throws ContractError on an empty list.
std::string BuildGptAttackPrompt(std::span<const std::string> tokens);

// Renders tokens as `["a", "b"]` with JSON string escaping.
std::string RenderTokenList(std::span<const std::string> tokens);

// Extracts the first list of singleton lists from a model response, e.g.
//   [
//   ["Prediction1"], # Corresponding to "Privacy"
//   ["Prediction2"]
//   ]
// `#` comments outside string literals are ignored, as is prose around the
// list. Throws ResponseParseError (carrying the raw body) when no such list
// exists or its length differs from `expected_count`.
std::vector<std::string> ParseGptAttackResponse(std::string_view body,
                                                std::size_t expected_count);

// Formats predictions in the layout the attack prompt requests. Used by
// mock backends and tests.
std::string FormatGptAttackResponse(std::span<const std::string> predictions);

}  // namespace dptext

#endif  // DPTEXT_PROMPTS_H_
