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

#ifndef DPTEXT_LLM_CLIENT_H_
#define DPTEXT_LLM_CLIENT_H_

#include <chrono>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace dptext {

// Black-box text generation endpoint: prompt in, generated text out.
// Implementations throw TransientError for retryable failures and
// EndpointError otherwise.
class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual std::string Generate(const std::string& prompt) = 0;
};

struct LlmEndpointConfig {
  // Requests go to `<base_url>/chat/completions`.
  std::string base_url = "http://127.0.0.1:8000/v1";
  std::string model_name = "gpt-4";
  double temperature = 0.5;
  int max_output_tokens = 100;
  std::string api_key_env = "DPTEXT_API_KEY";
  double timeout_seconds = 60.0;
  std::size_t max_concurrency = 4;

  // Remote inference defaults (temperature 0.5).
  static LlmEndpointConfig Remote();
  // Local restoration defaults (temperature 0).
  static LlmEndpointConfig Restoration();

  // Throws ConfigError.
  void Validate() const;
};

// Chat-completion style JSON POST with bearer-token auth:
//   {"model": ..., "temperature": ..., "max_tokens": ...,
//    "messages": [{"role": "user", "content": <prompt>}]}
// The reply's choices[0].message.content is returned.
class HttpLlmClient : public LlmClient {
 public:
  // An empty `api_key` sends no Authorization header.
  HttpLlmClient(LlmEndpointConfig config, std::string api_key);

  std::string Generate(const std::string& prompt) override;

  static std::string BuildRequestBody(const LlmEndpointConfig& config,
                                      const std::string& prompt);
  // Throws EndpointError on a body without the expected fields.
  static std::string ParseResponseBody(const std::string& body);

 private:
  LlmEndpointConfig config_;
  std::string api_key_;
};

// Deterministic in-process backend.
class MockLlmClient : public LlmClient {
 public:
  enum class Mode {
    kEcho,   // returns the prompt
    kTable,  // looks the prompt up in a fixture table
    kFixed,  // returns one fixed string
  };
  enum class Failure { kTransient, kEndpoint, kMalformed };

  static MockLlmClient Echo();
  static MockLlmClient Fixed(std::string text);
  // Prompts missing from the table fall back to `fallback`, or raise
  // EndpointError when there is none.
  static MockLlmClient Table(std::map<std::string, std::string> table,
                             std::optional<std::string> fallback = std::nullopt);

  MockLlmClient(const MockLlmClient& other);

  // The next calls fail in the given order before normal behavior resumes.
  void QueueFailures(std::vector<Failure> failures);
  // Every call fails with `failure`.
  void FailAlways(Failure failure);
  // Installs a function deciding the reply; overrides the mode.
  void SetResponder(std::function<std::string(const std::string&)> responder);

  std::string Generate(const std::string& prompt) override;

  std::size_t calls() const;
  std::vector<std::string> prompts() const;

 private:
  MockLlmClient(Mode mode, std::map<std::string, std::string> table,
                std::optional<std::string> fixed);

  Mode mode_;
  std::map<std::string, std::string> table_;
  std::optional<std::string> fixed_;
  std::function<std::string(const std::string&)> responder_;
  std::deque<Failure> queued_;
  std::optional<Failure> always_;
  mutable std::mutex mu_;
  std::size_t calls_ = 0;
  std::vector<std::string> prompts_;
};

// Exponential backoff: delay_k = initial_delay * 2^k for k = 0..max_retries-1.
struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds initial_delay{1000};
  // Replaced in tests to avoid real sleeping.
  std::function<void(std::chrono::milliseconds)> sleep;
};

// Generate with retries on TransientError. Throws TimeoutError once retries
// are exhausted; EndpointError passes through untouched.
std::string RunInference(LlmClient& client, const std::string& prompt,
                         const RetryPolicy& policy = {});

// Masked-LM adversary: ranks replacements for `tokens[masked_position]`,
// which the caller has replaced with kMaskToken.
class MaskedLmClient {
 public:
  virtual ~MaskedLmClient() = default;
  virtual std::vector<std::string> Predict(const std::vector<std::string>& tokens,
                                           std::size_t masked_position,
                                           std::size_t k) = 0;
};

inline constexpr const char* kMaskToken = "[MASK]";

// POSTs {"tokens": [...], "mask_index": i, "top_k": k} to `url` and reads
// {"candidates": [...]}.
class HttpMaskedLmClient : public MaskedLmClient {
 public:
  HttpMaskedLmClient(std::string url, double timeout_seconds);
  std::vector<std::string> Predict(const std::vector<std::string>& tokens,
                                   std::size_t masked_position,
                                   std::size_t k) override;

 private:
  std::string url_;
  double timeout_seconds_;
};

}  // namespace dptext

#endif  // DPTEXT_LLM_CLIENT_H_
