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

#include "dptext/pipeline.h"

#include <thread>

#include <gtest/gtest.h>

#include "httplib.h"
#include "dptext/errors.h"
#include "dptext/llm_client.h"
#include "dptext/prompts.h"
#include "dptext/run_record.h"
#include "test_util.h"

namespace dptext {
namespace {

using nlohmann::json;

RetryPolicy RecordingRetry(std::vector<std::chrono::milliseconds>* sleeps) {
  RetryPolicy p;
  p.sleep = [sleeps](std::chrono::milliseconds d) { sleeps->push_back(d); };
  return p;
}

class PipelineTest : public ::testing::Test {
 protected:
  PipelineTest()
      : vocab_(testing::CharVocab({"Alice", " lives", " in", " Paris"})),
        table_(testing::GaussianTable(vocab_.size(), 6, 3)) {
    options_.n_docs = 3;
    options_.retry = RecordingRetry(&sleeps_);
  }

  RunRecord Run(LlmClient& remote, LlmClient& local, std::uint64_t seed = 7) {
    return RunPrivateInference(kDoc, vocab_, table_, cfg_, options_, remote, local,
                        Rng(seed));
  }

  static constexpr const char* kDoc = "Alice lives in Paris.";
  Vocabulary vocab_;
  EmbeddingTable table_;
  MechanismConfig cfg_;
  PipelineOptions options_;
  std::vector<std::chrono::milliseconds> sleeps_;
};

TEST_F(PipelineTest, HappyPath) {
  MockLlmClient remote = MockLlmClient::Echo();
  MockLlmClient local = MockLlmClient::Fixed("restored");
  const RunRecord r = Run(remote, local);
  EXPECT_EQ(r.status, RunStatus::kOk);
  EXPECT_EQ(r.restored, "restored");
  ASSERT_EQ(r.perturbed.size(), 3u);
  EXPECT_EQ(remote.calls(), 3u);
  EXPECT_EQ(local.calls(), 1u);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(r.generations[j], BuildInferencePrompt(r.perturbed[j].text));
  }
  std::vector<std::string> gens;
  for (const auto& g : r.generations) gens.push_back(*g);
  EXPECT_EQ(local.prompts().at(0), BuildRestorationPrompt(kDoc, gens));
  EXPECT_EQ(r.timestamps.size(), 4u);
  EXPECT_EQ(r.run_id.rfind("run-", 0), 0u);
}

TEST_F(PipelineTest, RemoteNeverSeesRawDocument) {
  MockLlmClient remote = MockLlmClient::Echo();
  MockLlmClient local = MockLlmClient::Fixed("x");
  cfg_.epsilon_em = 0.01;
  const RunRecord r = Run(remote, local);
  for (const auto& p : remote.prompts()) {
    EXPECT_EQ(p.find(std::string(kDoc) + "\n"), std::string::npos);
  }
  EXPECT_EQ(r.raw_document, kDoc);
}

TEST_F(PipelineTest, DeterministicPerSeed) {
  MockLlmClient remote = MockLlmClient::Echo();
  MockLlmClient local = MockLlmClient::Fixed("x");
  const RunRecord a = Run(remote, local, 5);
  const RunRecord b = Run(remote, local, 5);
  EXPECT_EQ(a.run_id, b.run_id);
  json ja = RunRecordToJson(a), jb = RunRecordToJson(b);
  ja.erase("timestamps");
  jb.erase("timestamps");
  EXPECT_EQ(ja, jb);
  EXPECT_NE(Run(remote, local, 6).run_id, a.run_id);
}

TEST_F(PipelineTest, TransientFailuresRetryWithBackoff) {
  MockLlmClient remote = MockLlmClient::Echo();
  remote.QueueFailures({MockLlmClient::Failure::kTransient,
                        MockLlmClient::Failure::kTransient});
  MockLlmClient local = MockLlmClient::Fixed("x");
  options_.max_concurrency = 1;
  const RunRecord r = Run(remote, local);
  EXPECT_EQ(r.status, RunStatus::kOk);
  EXPECT_EQ(sleeps_, (std::vector<std::chrono::milliseconds>{
                         std::chrono::milliseconds(1000),
                         std::chrono::milliseconds(2000)}));
}

TEST_F(PipelineTest, RemoteFailureIsRecorded) {
  MockLlmClient remote = MockLlmClient::Echo();
  remote.FailAlways(MockLlmClient::Failure::kTransient);
  MockLlmClient local = MockLlmClient::Fixed("x");
  const RunRecord r = Run(remote, local);
  EXPECT_EQ(r.status, RunStatus::kRemoteFailed);
  EXPECT_TRUE(r.error.has_value());
  EXPECT_FALSE(r.restored.has_value());
  EXPECT_EQ(local.calls(), 0u);
  // 1 + 3 retries per document.
  EXPECT_EQ(remote.calls(), 12u);
}

TEST_F(PipelineTest, EndpointErrorIsNotRetried) {
  MockLlmClient remote = MockLlmClient::Echo();
  remote.FailAlways(MockLlmClient::Failure::kEndpoint);
  MockLlmClient local = MockLlmClient::Fixed("x");
  const RunRecord r = Run(remote, local);
  EXPECT_EQ(r.status, RunStatus::kRemoteFailed);
  EXPECT_EQ(remote.calls(), 3u);
  EXPECT_TRUE(sleeps_.empty());
}

TEST_F(PipelineTest, RestorationFailureKeepsGenerations) {
  MockLlmClient remote = MockLlmClient::Echo();
  MockLlmClient local = MockLlmClient::Fixed("x");
  local.FailAlways(MockLlmClient::Failure::kEndpoint);
  const RunRecord r = Run(remote, local);
  EXPECT_EQ(r.status, RunStatus::kRestorationFailed);
  for (const auto& g : r.generations) EXPECT_TRUE(g.has_value());
}

TEST_F(PipelineTest, TruncationKeepsFirstTokens) {
  MockLlmClient remote = MockLlmClient::Echo();
  MockLlmClient local = MockLlmClient::Fixed("x");
  options_.truncate_prefix = true;
  options_.truncate_tokens = 2;
  const RunRecord r = Run(remote, local);
  EXPECT_EQ(r.raw_document, "Alice lives");
  EXPECT_EQ(r.perturbed[0].ids.size(), 2u);
}

TEST_F(PipelineTest, RejectsMismatchedTable) {
  MockLlmClient remote = MockLlmClient::Echo();
  MockLlmClient local = MockLlmClient::Fixed("x");
  const EmbeddingTable small = testing::GaussianTable(3, 2, 1);
  EXPECT_THROW(RunPrivateInference(kDoc, vocab_, small, cfg_, options_, remote, local,
                            Rng(1)),
               ContractError);
}

TEST(RunRecordTest, JsonRoundTripWithInvalidUtf8) {
  RunRecord r;
  r.run_id = "run-abc";
  r.status = RunStatus::kRestorationFailed;
  r.error = "boom";
  r.raw_document = "plain";
  r.seed = 99;
  r.config = {{"k", 1}};
  r.perturbed = {{1, std::string("bad\xff", 4), {1, 2}}};
  r.generations = {std::nullopt};
  r.timestamps = {{"remote:1", "a", "b", true}};
  const RunRecord back = RunRecordFromJson(RunRecordToJson(r));
  EXPECT_EQ(back.perturbed[0].text, r.perturbed[0].text);
  EXPECT_EQ(back.status, r.status);
  EXPECT_EQ(back.error, r.error);
  EXPECT_FALSE(back.generations[0].has_value());
  EXPECT_EQ(back.seed, 99u);
  EXPECT_EQ(RunRecordToJson(back), RunRecordToJson(r));

  testing::TempDir dir;
  const auto path = SaveRunRecord(r, dir.path());
  EXPECT_EQ(path.filename(), "run-abc.json");
  EXPECT_EQ(RunRecordToJson(LoadRunRecord(path)), RunRecordToJson(r));
}

// ---- HTTP client against a local server -------------------------------------

class HttpClientTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                                httplib::Response& res) {
      last_auth_ = req.get_header_value("Authorization");
      last_body_ = req.body;
      res.status = status_;
      res.set_content(reply_, "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  LlmEndpointConfig Config() const {
    LlmEndpointConfig c = LlmEndpointConfig::Remote();
    c.base_url = "http://127.0.0.1:" + std::to_string(port_) + "/v1";
    c.timeout_seconds = 5;
    return c;
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  int status_ = 200;
  std::string reply_ =
      R"({"choices":[{"message":{"role":"assistant","content":"hi there"}}]})";
  std::string last_auth_;
  std::string last_body_;
};

TEST_F(HttpClientTest, SendsChatCompletion) {
  HttpLlmClient client(Config(), "secret");
  EXPECT_EQ(client.Generate("hello"), "hi there");
  EXPECT_EQ(last_auth_, "Bearer secret");
  const json body = json::parse(last_body_);
  EXPECT_EQ(body["model"], "gpt-4");
  EXPECT_EQ(body["temperature"], 0.5);
  EXPECT_EQ(body["max_tokens"], 100);
  EXPECT_EQ(body["messages"][0]["content"], "hello");
}

TEST_F(HttpClientTest, ServerErrorIsTransient) {
  status_ = 503;
  HttpLlmClient client(Config(), "k");
  EXPECT_THROW(client.Generate("x"), TransientError);
  status_ = 429;
  EXPECT_THROW(client.Generate("x"), TransientError);
}

TEST_F(HttpClientTest, ClientErrorIsEndpointError) {
  status_ = 401;
  HttpLlmClient client(Config(), "k");
  EXPECT_THROW(client.Generate("x"), EndpointError);
}

TEST_F(HttpClientTest, MalformedBodyIsEndpointError) {
  reply_ = R"({"unexpected": true})";
  HttpLlmClient client(Config(), "k");
  EXPECT_THROW(client.Generate("x"), EndpointError);
}

TEST_F(HttpClientTest, ExhaustedRetriesTimeOut) {
  status_ = 500;
  HttpLlmClient client(Config(), "k");
  RetryPolicy p;
  int sleeps = 0;
  p.sleep = [&](std::chrono::milliseconds) { ++sleeps; };
  EXPECT_THROW(RunInference(client, "x", p), TimeoutError);
  EXPECT_EQ(sleeps, 3);
}

TEST(HttpClientNoServerTest, ConnectionRefusedIsTransient) {
  LlmEndpointConfig c = LlmEndpointConfig::Remote();
  c.base_url = "http://127.0.0.1:1/v1";
  c.timeout_seconds = 1;
  HttpLlmClient client(c, "");
  EXPECT_THROW(client.Generate("x"), TransientError);
}

TEST(EndpointConfigTest, Validate) {
  LlmEndpointConfig c;
  c.temperature = -1;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = LlmEndpointConfig::Restoration();
  EXPECT_EQ(c.temperature, 0.0);
  EXPECT_NO_THROW(c.Validate());
}

}  // namespace
}  // namespace dptext
