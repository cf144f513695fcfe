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

#include "dptext/llm_client.h"

#include <thread>

#include "json.hpp"
#include "dptext/errors.h"

namespace dptext {

LlmEndpointConfig LlmEndpointConfig::Remote() { return LlmEndpointConfig{}; }

LlmEndpointConfig LlmEndpointConfig::Restoration() {
  LlmEndpointConfig c;
  c.model_name = "vicuna-7b";
  c.temperature = 0.0;
  c.max_concurrency = 1;
  return c;
}

void LlmEndpointConfig::Validate() const {
  if (!(temperature >= 0.0)) throw ConfigError("temperature must be >= 0");
  if (!(timeout_seconds > 0.0)) throw ConfigError("timeout must be > 0");
  if (max_output_tokens < 1) throw ConfigError("max_output_tokens must be >= 1");
  if (max_concurrency < 1) throw ConfigError("max_concurrency must be >= 1");
  if (base_url.empty()) throw ConfigError("base_url is empty");
}

std::string HttpLlmClient::BuildRequestBody(const LlmEndpointConfig& config,
                                            const std::string& prompt) {
  nlohmann::json body = {
      {"model", config.model_name},
      {"temperature", config.temperature},
      {"max_tokens", config.max_output_tokens},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
  };
  return body.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::string HttpLlmClient::ParseResponseBody(const std::string& body) {
  try {
    const auto j = nlohmann::json::parse(body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw EndpointError(std::string("malformed completion response: ") + e.what());
  }
}

MockLlmClient::MockLlmClient(Mode mode, std::map<std::string, std::string> table,
                             std::optional<std::string> fixed)
    : mode_(mode), table_(std::move(table)), fixed_(std::move(fixed)) {}

MockLlmClient::MockLlmClient(const MockLlmClient& other)
    : mode_(other.mode_),
      table_(other.table_),
      fixed_(other.fixed_),
      responder_(other.responder_),
      queued_(other.queued_),
      always_(other.always_) {}

MockLlmClient MockLlmClient::Echo() { return MockLlmClient(Mode::kEcho, {}, {}); }

MockLlmClient MockLlmClient::Fixed(std::string text) {
  return MockLlmClient(Mode::kFixed, {}, std::move(text));
}

MockLlmClient MockLlmClient::Table(std::map<std::string, std::string> table,
                                   std::optional<std::string> fallback) {
  return MockLlmClient(Mode::kTable, std::move(table), std::move(fallback));
}

void MockLlmClient::QueueFailures(std::vector<Failure> failures) {
  std::lock_guard<std::mutex> lock(mu_);
  queued_.insert(queued_.end(), failures.begin(), failures.end());
}

void MockLlmClient::FailAlways(Failure failure) {
  std::lock_guard<std::mutex> lock(mu_);
  always_ = failure;
}

void MockLlmClient::SetResponder(
    std::function<std::string(const std::string&)> responder) {
  std::lock_guard<std::mutex> lock(mu_);
  responder_ = std::move(responder);
}

std::string MockLlmClient::Generate(const std::string& prompt) {
  std::optional<Failure> failure;
  std::function<std::string(const std::string&)> responder;
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++calls_;
    prompts_.push_back(prompt);
    if (!queued_.empty()) {
      failure = queued_.front();
      queued_.pop_front();
    } else {
      failure = always_;
    }
    responder = responder_;
  }
  if (failure) {
    switch (*failure) {
      case Failure::kTransient:
        throw TransientError("mock: simulated network timeout");
      case Failure::kEndpoint:
        throw EndpointError("mock: simulated HTTP 400");
      case Failure::kMalformed:
        return HttpLlmClient::ParseResponseBody("{\"unexpected\": true}");
    }
  }
  if (responder) return responder(prompt);
  switch (mode_) {
    case Mode::kEcho:
      return prompt;
    case Mode::kFixed:
      return *fixed_;
    case Mode::kTable: {
      auto it = table_.find(prompt);
      if (it != table_.end()) return it->second;
      if (fixed_) return *fixed_;
      throw EndpointError("mock: prompt not in fixture table");
    }
  }
  return {};
}

std::size_t MockLlmClient::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return calls_;
}

std::vector<std::string> MockLlmClient::prompts() const {
  std::lock_guard<std::mutex> lock(mu_);
  return prompts_;
}

std::string RunInference(LlmClient& client, const std::string& prompt,
                         const RetryPolicy& policy) {
  auto delay = policy.initial_delay;
  for (int attempt = 0;; ++attempt) {
    try {
      return client.Generate(prompt);
    } catch (const TransientError& e) {
      if (attempt >= policy.max_retries) {
        throw TimeoutError("gave up after " + std::to_string(attempt + 1) +
                           " attempts: " + e.what());
      }
    }
    if (policy.sleep) {
      policy.sleep(delay);
    } else {
      std::this_thread::sleep_for(delay);
    }
    delay *= 2;
  }
}

}  // namespace dptext
