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

// HTTP transports. cpp-httplib is confined to this translation unit.

#include <cmath>

#include "httplib.h"
#include "json.hpp"
#include "dptext/errors.h"
#include "dptext/llm_client.h"

namespace dptext {
namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // begins with '/' or is empty
};

SplitUrl Split(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("URL needs a scheme: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, ""};
  return {url.substr(0, path_start), url.substr(path_start)};
}

void SetTimeouts(httplib::Client& client, double seconds) {
  const auto whole = static_cast<time_t>(std::floor(seconds));
  const auto usec = static_cast<time_t>((seconds - static_cast<double>(whole)) * 1e6);
  client.set_connection_timeout(whole, usec);
  client.set_read_timeout(whole, usec);
  client.set_write_timeout(whole, usec);
}

std::string PostJson(const std::string& url, const std::string& body,
                     double timeout_seconds, const std::string& bearer) {
  const SplitUrl parts = Split(url);
  httplib::Client client(parts.origin);
  SetTimeouts(client, timeout_seconds);
  httplib::Headers headers;
  if (!bearer.empty()) headers.emplace("Authorization", "Bearer " + bearer);
  auto res = client.Post(parts.path.empty() ? "/" : parts.path, headers, body,
                         "application/json");
  if (!res) {
    throw TransientError("request to " + url + " failed: " +
                         httplib::to_string(res.error()));
  }
  if (res->status == 429 || res->status >= 500) {
    throw TransientError("HTTP " + std::to_string(res->status) + " from " + url);
  }
  if (res->status != 200) {
    throw EndpointError("HTTP " + std::to_string(res->status) + " from " + url +
                        ": " + res->body.substr(0, 512));
  }
  return res->body;
}

}  // namespace

HttpLlmClient::HttpLlmClient(LlmEndpointConfig config, std::string api_key)
    : config_(std::move(config)), api_key_(std::move(api_key)) {
  config_.Validate();
}

std::string HttpLlmClient::Generate(const std::string& prompt) {
  std::string base = config_.base_url;
  while (!base.empty() && base.back() == '/') base.pop_back();
  return ParseResponseBody(PostJson(base + "/chat/completions",
                                    BuildRequestBody(config_, prompt),
                                    config_.timeout_seconds, api_key_));
}

HttpMaskedLmClient::HttpMaskedLmClient(std::string url, double timeout_seconds)
    : url_(std::move(url)), timeout_seconds_(timeout_seconds) {}

std::vector<std::string> HttpMaskedLmClient::Predict(
    const std::vector<std::string>& tokens, std::size_t masked_position,
    std::size_t k) {
  nlohmann::json request = {
      {"tokens", tokens}, {"mask_index", masked_position}, {"top_k", k}};
  const std::string body = PostJson(
      url_, request.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace),
      timeout_seconds_, "");
  try {
    auto candidates =
        nlohmann::json::parse(body).at("candidates").get<std::vector<std::string>>();
    if (candidates.empty()) throw EndpointError("masked-LM returned no candidates");
    return candidates;
  } catch (const nlohmann::json::exception& e) {
    throw EndpointError(std::string("malformed masked-LM response: ") + e.what());
  }
}

}  // namespace dptext
