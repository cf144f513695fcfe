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

#include <gtest/gtest.h>

#include "dptext/errors.h"
#include "test_util.h"

namespace dptext {
namespace {

using testing::ReadGolden;

const char kDoc[] = "Alice Smith lives at 42 Elm Road and works as a nurse.";

TEST(PromptGoldenTest, Inference) {
  EXPECT_EQ(BuildInferencePrompt(kDoc), ReadGolden("inference_prompt.txt"));
}

TEST(PromptGoldenTest, Restoration) {
  const std::vector<std::string> gens = {
      "She enjoys gardening on weekends.",
      "Her shift starts at\nseven in the morning."};
  EXPECT_EQ(BuildRestorationPrompt(kDoc, gens),
            ReadGolden("restoration_prompt.txt"));
}

TEST(PromptGoldenTest, GptAttack) {
  const std::vector<std::string> tokens = {"Privacy", "LLM", "Text"};
  EXPECT_EQ(BuildGptAttackPrompt(tokens), ReadGolden("gpt_attack_prompt.txt"));
}

TEST(PromptTest, RestorationNeedsGenerations) {
  EXPECT_THROW(BuildRestorationPrompt(kDoc, {}), ContractError);
  EXPECT_THROW(BuildGptAttackPrompt({}), ContractError);
}

TEST(RenderTokenListTest, EscapesJson) {
  const std::vector<std::string> tokens = {"a\"b", " x", "\n"};
  EXPECT_EQ(RenderTokenList(tokens), R"(["a\"b", " x", "\n"])");
}

TEST(ParseGptAttackResponseTest, ExampleOutput) {
  const auto preds = ParseGptAttackResponse(ReadGolden("gpt_attack_response.txt"), 3);
  EXPECT_EQ(preds, (std::vector<std::string>{"Prediction1", "Prediction2",
                                             "Prediction3"}));
}

TEST(ParseGptAttackResponseTest, RoundTripsFormatter) {
  const std::vector<std::string> preds = {"hello", " world", "#tag", "a\"q", "]"};
  EXPECT_EQ(ParseGptAttackResponse(FormatGptAttackResponse(preds), preds.size()),
            preds);
}

TEST(ParseGptAttackResponseTest, IgnoresSurroundingProse) {
  const std::string body =
      "Sure! Here are my guesses [with care]:\n[\n[\"one\"], # first\n"
      "[\"two\", \"alt\"],\n]\nHope this helps.";
  EXPECT_EQ(ParseGptAttackResponse(body, 2),
            (std::vector<std::string>{"one", "two"}));
}

TEST(ParseGptAttackResponseTest, CountMismatchKeepsRawBody) {
  const std::string body = "[[\"one\"]]";
  try {
    ParseGptAttackResponse(body, 2);
    FAIL() << "expected ResponseParseError";
  } catch (const ResponseParseError& e) {
    EXPECT_EQ(e.raw_body(), body);
  }
}

TEST(ParseGptAttackResponseTest, NoListIsError) {
  EXPECT_THROW(ParseGptAttackResponse("I cannot help with that.", 1),
               ResponseParseError);
  EXPECT_THROW(ParseGptAttackResponse("[\"flat\", \"list\"]", 2),
               ResponseParseError);
}

}  // namespace
}  // namespace dptext
