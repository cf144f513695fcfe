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

#include "dptext/cli.h"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "dptext/attacks.h"
#include "dptext/config.h"
#include "dptext/embedding_table.h"
#include "dptext/errors.h"
#include "dptext/llm_client.h"
#include "dptext/mechanisms.h"
#include "dptext/metrics.h"
#include "dptext/perturbed_io.h"
#include "dptext/pipeline.h"
#include "dptext/prompts.h"
#include "dptext/run_record.h"
#include "dptext/verify.h"
#include "dptext/vocabulary.h"

namespace dptext {
namespace {

using nlohmann::json;

// Flag values that override the config file when given.
struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool mock = false;
  bool quiet = false;
  std::optional<std::string> vocab, embeddings, merges, runs_dir;
  std::optional<std::string> mechanism, scoring, sensitivity;
  std::optional<double> epsilon, epsilon_lap;
  std::optional<std::size_t> top_k, n_docs, vocab_prefix;
};

struct Resources {
  Vocabulary vocab;
  EmbeddingTable table;
};

AppConfig BuildConfig(const Overrides& o) {
  AppConfig cfg = o.config_path.empty() ? AppConfig{} : LoadAppConfig(o.config_path);
  if (o.seed) cfg.seed = o.seed;
  if (o.vocab) cfg.vocab_path = *o.vocab;
  if (o.embeddings) cfg.embeddings_path = *o.embeddings;
  if (o.merges) cfg.merges_path = *o.merges;
  if (o.runs_dir) cfg.runs_dir = *o.runs_dir;
  if (o.vocab_prefix) cfg.vocab_prefix = o.vocab_prefix;
  if (o.mechanism) cfg.mechanism.kind = ParseMechanismKind(*o.mechanism);
  if (o.scoring) cfg.mechanism.scoring_mode = ParseScoringMode(*o.scoring);
  if (o.sensitivity) {
    if (*o.sensitivity == "auto") {
      cfg.mechanism.laplace_sensitivity.reset();
    } else {
      try {
        cfg.mechanism.laplace_sensitivity = std::stod(*o.sensitivity);
      } catch (const std::exception&) {
        throw ConfigError("bad --sensitivity '" + *o.sensitivity + "'");
      }
    }
  }
  if (o.epsilon) cfg.mechanism.epsilon_em = *o.epsilon;
  if (o.epsilon_lap) cfg.mechanism.epsilon_lap = o.epsilon_lap;
  if (o.top_k) cfg.mechanism.top_k = *o.top_k;
  if (o.n_docs) cfg.n_docs = *o.n_docs;
  return cfg;
}

std::uint64_t ResolveSeed(AppConfig& cfg, bool quiet, std::ostream& err) {
  if (!cfg.seed) {
    std::random_device rd;
    cfg.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    if (!quiet) err << "seed=" << *cfg.seed << " (pass --seed to replay)\n";
  }
  return *cfg.seed;
}

void RequireFile(const std::filesystem::path& p, const char* what) {
  if (p.empty()) throw ConfigError(std::string(what) + " path is not configured");
  if (!std::filesystem::exists(p)) {
    throw ConfigError(std::string(what) + " file not found: " + p.string());
  }
}

Resources LoadResources(const AppConfig& cfg) {
  RequireFile(cfg.vocab_path, "vocabulary");
  RequireFile(cfg.embeddings_path, "embeddings");
  Vocabulary vocab = LoadVocabulary(cfg.vocab_path);
  if (cfg.merges_path) {
    RequireFile(*cfg.merges_path, "merges");
    vocab = vocab.WithMerges(LoadMerges(*cfg.merges_path));
  }
  EmbeddingTable table = LoadEmbeddings(cfg.embeddings_path, vocab);
  if (cfg.vocab_prefix && *cfg.vocab_prefix < vocab.size()) {
    if (*cfg.vocab_prefix == 0) throw ConfigError("vocab prefix must be >= 1");
    vocab = vocab.Prefix(*cfg.vocab_prefix);
    table = EmbeddingTable(
        table.rows().topRows(static_cast<Eigen::Index>(*cfg.vocab_prefix)));
  }
  return {std::move(vocab), std::move(table)};
}

std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json PerturbSnapshot(const AppConfig& cfg, std::size_t vocab_size,
                     bool truncate) {
  return {{"mechanism", MechanismConfigToJson(cfg.mechanism)},
          {"n_docs", cfg.n_docs},
          {"vocab_size", vocab_size},
          {"truncate_prefix", truncate}};
}

// ---- perturb ---------------------------------------------------------------

struct PerturbArgs {
  std::string input;
  std::string out;
  bool redact = false;
  bool truncate = false;
};

int CmdPerturb(AppConfig cfg, const Overrides& o, const PerturbArgs& a,
               std::ostream& out, std::ostream& err) {
  cfg.mechanism.Validate();
  const std::uint64_t seed = ResolveSeed(cfg, o.quiet, err);
  const Resources res = LoadResources(cfg);
  const std::string text = ReadFile(a.input);
  TokenIdSeq ids = Tokenize(text, res.vocab);
  if (a.truncate && ids.size() > 50) ids.resize(50);
  const std::string original = Detokenize(ids, res.vocab);

  const AdjacencyIndex index(res.table);
  const auto docs =
      PerturbDocument(ids, res.table, cfg.mechanism, cfg.n_docs, Rng(seed), &index);

  std::ofstream file(a.out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot write " + a.out);
  WritePerturbedJsonl(file, docs, seed,
                      PerturbSnapshot(cfg, res.vocab.size(), a.truncate),
                      a.redact, &res.vocab);
  file.close();

  for (const auto& d : docs) {
    out << "doc=" << d.doc_index << " tokens=" << d.perturbed_ids.size()
        << " edit_distance="
        << Levenshtein(original, Detokenize(d.perturbed_ids, res.vocab)) << '\n';
  }
  return 0;
}

// ---- run -------------------------------------------------------------------

struct RunArgs {
  std::string input;
  bool truncate = false;
  std::string mock_restoration = "(mock restoration)";
};

int CmdRun(AppConfig cfg, const Overrides& o, const RunArgs& a, std::ostream& out,
           std::ostream& err) {
  cfg.mechanism.Validate();
  cfg.remote.Validate();
  cfg.restore.Validate();
  std::string api_key;
  if (!o.mock) {
    const char* key = std::getenv(cfg.remote.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw ConfigError("environment variable " + cfg.remote.api_key_env +
                        " is not set (use --mock for offline runs)");
    }
    api_key = key;
  }
  const std::uint64_t seed = ResolveSeed(cfg, o.quiet, err);
  const Resources res = LoadResources(cfg);
  const std::string text = ReadFile(a.input);

  std::unique_ptr<LlmClient> remote;
  std::unique_ptr<LlmClient> local;
  if (o.mock) {
    remote = std::make_unique<MockLlmClient>(MockLlmClient::Echo());
    local = std::make_unique<MockLlmClient>(MockLlmClient::Fixed(a.mock_restoration));
  } else {
    remote = std::make_unique<HttpLlmClient>(cfg.remote, api_key);
    const char* local_key = std::getenv(cfg.restore.api_key_env.c_str());
    local = std::make_unique<HttpLlmClient>(cfg.restore,
                                            local_key ? std::string(local_key) : "");
  }

  PipelineOptions options;
  options.n_docs = cfg.n_docs;
  options.truncate_prefix = a.truncate;
  options.max_concurrency = cfg.remote.max_concurrency;
  options.extra_config = {{"remote", EndpointToJson(cfg.remote)},
                          {"restore", EndpointToJson(cfg.restore)},
                          {"mock", o.mock},
                          {"vocab_size", res.vocab.size()}};
  const AdjacencyIndex index(res.table);
  const RunRecord record = RunPrivateInference(text, res.vocab, res.table, cfg.mechanism,
                                        options, *remote, *local, Rng(seed), &index);
  const auto path = SaveRunRecord(record, cfg.runs_dir);
  if (!o.quiet) {
    err << "run_id=" << record.run_id << " status=" << ToString(record.status)
        << " record=" << path.string() << '\n';
  }
  if (record.status != RunStatus::kOk) {
    err << "error: " << record.error.value_or("run failed") << '\n';
    return 1;
  }
  out << *record.restored << '\n';
  return 0;
}

// ---- attack ----------------------------------------------------------------

struct AttackArgs {
  std::string input;
  std::string originals;
  std::string kind = "inversion";
  std::optional<std::size_t> k;
  std::optional<std::size_t> chunk_size;
  std::string report;
  std::string attacker_embeddings;
  std::string mock_strategy = "echo";
};

// Offline stand-in for the masked-LM adversary: guesses the token that is
// currently at the masked position.
class EchoMaskedLm : public MaskedLmClient {
 public:
  explicit EchoMaskedLm(std::vector<std::string> unmasked)
      : unmasked_(std::move(unmasked)) {}
  std::vector<std::string> Predict(const std::vector<std::string>&,
                                   std::size_t masked_position,
                                   std::size_t) override {
    return {unmasked_.at(masked_position)};
  }

 private:
  std::vector<std::string> unmasked_;
};

// Offline stand-in for the LLM adversary. "echo" predicts each perturbed
// token unchanged; "wrong" predicts a string that is never a token.
MockLlmClient MockAttackClient(const std::string& strategy) {
  if (strategy != "echo" && strategy != "wrong") {
    throw ConfigError("unknown --mock-strategy '" + strategy + "'");
  }
  MockLlmClient client = MockLlmClient::Echo();
  client.SetResponder([strategy](const std::string& prompt) {
    static constexpr std::string_view kMarker = "For the given list of \"INPUTS\":\n";
    const auto start = prompt.find(kMarker);
    const auto end = prompt.rfind("\nGenerate predictions");
    if (start == std::string::npos || end == std::string::npos) {
      throw EndpointError("mock attack client: unexpected prompt");
    }
    const auto begin = start + kMarker.size();
    auto tokens =
        json::parse(prompt.substr(begin, end - begin)).get<std::vector<std::string>>();
    if (strategy == "wrong") {
      for (auto& t : tokens) t = "\x01<no recovery>\x01";
    }
    return FormatGptAttackResponse(tokens);
  });
  return client;
}

int CmdAttack(AppConfig cfg, const Overrides& o, const AttackArgs& a,
              std::ostream& out, std::ostream&) {
  const Resources res = LoadResources(cfg);
  const std::size_t k = a.k.value_or(cfg.attack_k);
  const std::size_t chunk = a.chunk_size.value_or(cfg.attack_chunk_size);

  std::ifstream in(a.input, std::ios::binary);
  if (!in) throw Error("cannot open " + a.input);
  const auto records = ReadPerturbedJsonl(in);

  std::map<std::size_t, TokenIdSeq> originals;
  if (!a.originals.empty()) {
    std::ifstream oin(a.originals, std::ios::binary);
    if (!oin) throw Error("cannot open " + a.originals);
    for (const auto& r : ReadPerturbedJsonl(oin)) {
      if (r.original_ids) originals[r.doc_index] = *r.original_ids;
    }
  }
  for (const auto& r : records) {
    if (r.original_ids && !originals.contains(r.doc_index)) {
      originals[r.doc_index] = *r.original_ids;
    }
  }

  std::optional<EmbeddingTable> attacker_table;
  if (!a.attacker_embeddings.empty()) {
    attacker_table = LoadEmbeddings(a.attacker_embeddings, res.vocab);
  }
  const EmbeddingTable& adversary = attacker_table ? *attacker_table : res.table;

  std::unique_ptr<LlmClient> llm;
  if (a.kind == "gpt") {
    if (o.mock) {
      llm = std::make_unique<MockLlmClient>(MockAttackClient(a.mock_strategy));
    } else {
      const char* key = std::getenv(cfg.remote.api_key_env.c_str());
      if (key == nullptr || *key == '\0') {
        throw ConfigError("environment variable " + cfg.remote.api_key_env +
                          " is not set (use --mock for offline runs)");
      }
      llm = std::make_unique<HttpLlmClient>(cfg.remote, key);
    }
  } else if (a.kind == "mask") {
    if (!o.mock && !cfg.mask_url) {
      throw ConfigError("mask attack needs attack.mask_url or --mock");
    }
  } else if (a.kind != "inversion") {
    throw ConfigError("unknown attack kind '" + a.kind +
                      "' (expected inversion, gpt or mask)");
  }

  json doc_reports = json::array();
  AttackReport aggregate;
  aggregate.attack = a.kind;
  for (const auto& r : records) {
    auto it = originals.find(r.doc_index);
    if (it == originals.end()) {
      throw ContractError(
          "document " + std::to_string(r.doc_index) +
          " has no original_ids; attacks run in evaluation mode and need an "
          "unredacted batch (pass --originals <jsonl>)");
    }
    const TokenIdSeq& orig = it->second;
    AttackReport report;
    if (a.kind == "inversion") {
      report = EmbeddingInversion(r.perturbed_ids, orig, adversary, k);
    } else if (a.kind == "gpt") {
      report = GptInferenceAttack(r.perturbed_ids, orig, res.vocab, *llm, chunk);
    } else {
      std::unique_ptr<MaskedLmClient> masked;
      if (o.mock) {
        masked = std::make_unique<EchoMaskedLm>(TokenTexts(r.perturbed_ids, res.vocab));
      } else {
        masked = std::make_unique<HttpMaskedLmClient>(*cfg.mask_url,
                                                      cfg.remote.timeout_seconds);
      }
      report = MaskAttack(r.perturbed_ids, orig, res.vocab, *masked, k);
    }
    const double eps = r.config.contains("mechanism")
                           ? r.config["mechanism"].value("epsilon_em", 0.0)
                           : cfg.mechanism.epsilon_em;
    out << "doc=" << r.doc_index << ' ' << AttackSummaryLine(report, k, eps)
        << (report.failed ? " failed=true" : "") << '\n';
    json jr = AttackReportToJson(report);
    jr["doc_index"] = r.doc_index;
    doc_reports.push_back(std::move(jr));
    aggregate.Merge(report);
  }
  const double eps = !records.empty() && records.front().config.contains("mechanism")
                         ? records.front().config["mechanism"].value("epsilon_em", 0.0)
                         : cfg.mechanism.epsilon_em;
  out << "aggregate " << AttackSummaryLine(aggregate, k, eps)
      << (aggregate.failed ? " failed=true" : "") << '\n';

  const std::string report_path =
      a.report.empty() ? a.input + ".attack-" + a.kind + ".json" : a.report;
  json full = {{"kind", a.kind},
               {"k", k},
               {"epsilon", eps},
               {"seed", records.empty() ? json(nullptr) : json(records.front().seed)},
               {"config", records.empty() ? json::object() : records.front().config},
               {"input", a.input},
               {"documents", doc_reports},
               {"aggregate", AttackReportToJson(aggregate)}};
  std::ofstream rep(report_path, std::ios::binary | std::ios::trunc);
  if (!rep) throw Error("cannot write " + report_path);
  rep << full.dump(2) << '\n';
  return aggregate.failed ? 1 : 0;
}

// ---- metrics ---------------------------------------------------------------

struct MetricsArgs {
  std::vector<std::string> records;
  std::string sentence_embeddings;
  std::string json_out;
  std::string formula = "product";
};

std::vector<std::string> WhitespaceTokens(const std::string& text) {
  std::istringstream ss(text);
  std::vector<std::string> out;
  for (std::string w; ss >> w;) out.push_back(w);
  return out;
}

int CmdMetrics(AppConfig cfg, const Overrides&, const MetricsArgs& a,
               std::ostream& out, std::ostream& err) {
  std::vector<std::filesystem::path> paths(a.records.begin(), a.records.end());
  if (paths.empty()) {
    if (!std::filesystem::is_directory(cfg.runs_dir)) {
      throw ConfigError("no run records given and runs dir " +
                        cfg.runs_dir.string() + " does not exist");
    }
    for (const auto& e : std::filesystem::directory_iterator(cfg.runs_dir)) {
      if (e.path().extension() == ".json") paths.push_back(e.path());
    }
    std::sort(paths.begin(), paths.end());
  }
  const DiversityForm form =
      a.formula == "sum" ? DiversityForm::kSum : DiversityForm::kProduct;
  if (a.formula != "sum" && a.formula != "product") {
    throw ConfigError("--diversity must be product or sum");
  }

  std::optional<Vocabulary> vocab;
  if (!cfg.vocab_path.empty() && std::filesystem::exists(cfg.vocab_path)) {
    vocab = LoadVocabulary(cfg.vocab_path);
    if (cfg.merges_path) vocab = vocab->WithMerges(LoadMerges(*cfg.merges_path));
  }
  json sentence;
  if (!a.sentence_embeddings.empty()) {
    sentence = json::parse(ReadFile(a.sentence_embeddings));
  }

  json reports = json::array();
  out << std::left << std::setw(22) << "run_id" << std::setw(12) << "diversity"
      << std::setw(10) << "formula" << std::setw(11) << "coherence"
      << std::setw(10) << "edit" << std::setw(8) << "tokens" << "chars\n";
  for (const auto& p : paths) {
    const RunRecord rec = LoadRunRecord(p);
    if (!rec.restored) {
      err << "skipping " << rec.run_id << ": no restored text\n";
      continue;
    }
    MetricReport m;
    m.run_id = rec.run_id;
    std::vector<std::string> tokens;
    if (vocab) {
      try {
        tokens = TokenTexts(Tokenize(*rec.restored, *vocab), *vocab);
      } catch (const TokenizationError&) {
        tokens = WhitespaceTokens(*rec.restored);
      }
    } else {
      tokens = WhitespaceTokens(*rec.restored);
    }
    m.tokens = tokens.size();
    m.chars = rec.restored->size();
    m.diversity_formula = form;
    if (!tokens.empty()) {
      m.diversity = Diversity(tokens, form);
      m.diversity_alt = Diversity(
          tokens, form == DiversityForm::kProduct ? DiversityForm::kSum
                                                  : DiversityForm::kProduct);
    }
    double total = 0.0;
    for (const auto& pt : rec.perturbed) {
      m.edit_distances.push_back(Levenshtein(rec.raw_document, pt.text));
      total += static_cast<double>(m.edit_distances.back());
    }
    if (!m.edit_distances.empty()) {
      m.edit_distance = total / static_cast<double>(m.edit_distances.size());
    }
    if (sentence.contains(rec.run_id)) {
      const json& s = sentence[rec.run_id];
      if (s.contains("prefix") && s.contains("continuation")) {
        const auto x = s["prefix"].get<std::vector<double>>();
        const auto y = s["continuation"].get<std::vector<double>>();
        m.coherence = Coherence(
            Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size())),
            Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size())));
      }
      if (s.contains("mauve")) m.mauve = s["mauve"].get<double>();
    }
    std::ostringstream coh;
    if (m.coherence) {
      coh << std::fixed << std::setprecision(4) << *m.coherence;
    } else {
      coh << "-";
    }
    out << std::left << std::setw(22) << m.run_id << std::setw(12) << std::fixed
        << std::setprecision(4) << m.diversity << std::setw(10)
        << ToString(m.diversity_formula) << std::setw(11) << coh.str()
        << std::setw(10) << std::setprecision(2) << m.edit_distance
        << std::setw(8) << m.tokens << m.chars << '\n';
    json jm = MetricReportToJson(m);
    jm["seed"] = rec.seed;
    jm["config"] = rec.config;
    reports.push_back(std::move(jm));
  }
  if (!a.json_out.empty()) {
    std::ofstream f(a.json_out, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + a.json_out);
    f << reports.dump(2) << '\n';
  }
  return 0;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::optional<std::size_t> em_trials, membership_trials, support_trials;
  std::optional<double> eps_lap;
  std::string json_out;
};

int CmdVerify(AppConfig cfg, const Overrides& o, const VerifyArgs& a,
              std::ostream& out, std::ostream& err) {
  VerifySuiteOptions options;
  options.seed = ResolveSeed(cfg, o.quiet, err);
  options.epsilon = o.epsilon;
  if (a.eps_lap) options.eps_lap = *a.eps_lap;
  if (a.em_trials) options.em_trials = *a.em_trials;
  if (a.membership_trials) options.membership_trials = *a.membership_trials;
  if (a.support_trials) options.support_trials = *a.support_trials;
  if (options.membership_trials < 10000 || options.support_trials < 20000) {
    throw ConfigError(
        "Monte Carlo checks need >= 10000 membership and >= 20000 support trials");
  }
  const auto results = RunVerificationSuite(options);
  bool deterministic_failure = false;
  json all = json::array();
  for (const auto& r : results) {
    out << r.Line() << '\n';
    if (!o.quiet && !r.details.empty()) err << "  " << r.details << '\n';
    if (!r.pass && r.deterministic && !r.informational) deterministic_failure = true;
    all.push_back(VerificationResultToJson(r));
  }
  if (!a.json_out.empty()) {
    std::ofstream f(a.json_out, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + a.json_out);
    const json config = {{"epsilon", options.epsilon ? json(*options.epsilon) : json(nullptr)},
                         {"eps_lap", options.eps_lap},
                         {"em_trials", options.em_trials},
                         {"membership_trials", options.membership_trials},
                         {"support_trials", options.support_trials}};
    f << json({{"seed", options.seed}, {"config", config}, {"results", all}}).dump(2)
      << '\n';
  }
  return deterministic_failure ? 1 : 0;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Token-level differential privacy for black-box LLM prompts"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config_path, "key = value config file");
  app.add_option("--seed", o.seed, "random seed (random and reported if omitted)");
  app.add_flag("--mock", o.mock, "use deterministic offline backends");
  app.add_flag("--quiet", o.quiet, "suppress informational messages");
  app.add_option("--vocab", o.vocab, "vocabulary file");
  app.add_option("--embeddings", o.embeddings, "embedding file");
  app.add_option("--merges", o.merges, "BPE merges file");
  app.add_option("--vocab-prefix", o.vocab_prefix, "use only the first N tokens");
  app.add_option("--runs-dir", o.runs_dir, "directory for run records");
  app.add_option("--mechanism", o.mechanism, "rantext | topk | global");
  app.add_option("--epsilon", o.epsilon, "exponential-mechanism epsilon");
  app.add_option("--epsilon-lap", o.epsilon_lap, "Laplace epsilon (rantext)");
  app.add_option("--sensitivity", o.sensitivity, "Laplace sensitivity or 'auto'");
  app.add_option("--scoring", o.scoring, "origin-distance | noisy-distance");
  app.add_option("--top-k", o.top_k, "adjacency size of the topk mechanism");
  app.add_option("-n,--n-docs", o.n_docs, "number of perturbed documents");

  PerturbArgs pa;
  auto* perturb = app.add_subcommand("perturb", "write N perturbed copies as JSONL");
  perturb->add_option("--input", pa.input, "input text file")->required();
  perturb->add_option("--out", pa.out, "output JSONL")->required();
  perturb->add_flag("--redact", pa.redact, "omit original_ids from the output");
  perturb->add_flag("--truncate-prefix", pa.truncate,
                    "keep only the first 50 tokens");

  RunArgs ra;
  auto* run = app.add_subcommand("run", "perturb, infer remotely, restore locally");
  run->add_option("--input", ra.input, "input text file")->required();
  run->add_flag("--truncate-prefix", ra.truncate,
                "keep only the first 50 tokens");

  AttackArgs aa;
  auto* attack = app.add_subcommand("attack", "simulate a privacy attack");
  attack->add_option("--input", aa.input, "perturbed JSONL")->required();
  attack->add_option("--originals", aa.originals,
                     "unredacted JSONL holding original_ids");
  attack->add_option("--kind", aa.kind, "inversion | gpt | mask");
  attack->add_option("-k", aa.k, "candidates per token");
  attack->add_option("--chunk-size", aa.chunk_size, "tokens per attack prompt");
  attack->add_option("--report", aa.report, "AttackReport JSON output");
  attack->add_option("--attacker-embeddings", aa.attacker_embeddings,
                     "embedding table used by the adversary");
  attack->add_option("--mock-strategy", aa.mock_strategy, "echo | wrong");

  MetricsArgs ma;
  auto* metrics = app.add_subcommand("metrics", "utility metrics over run records");
  metrics->add_option("records", ma.records, "run record files");
  metrics->add_option("--sentence-embeddings", ma.sentence_embeddings,
                      "JSON {run_id: {prefix: [...], continuation: [...]}}");
  metrics->add_option("--json", ma.json_out, "MetricReport JSON output");
  metrics->add_option("--diversity", ma.formula, "product | sum");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "brute-force DP property checks");
  verify->add_option("--eps-lap", va.eps_lap, "Laplace epsilon for adjacency checks");
  verify->add_option("--em-trials", va.em_trials, "random EM score tables");
  verify->add_option("--membership-trials", va.membership_trials,
                     "draws for the membership check");
  verify->add_option("--support-trials", va.support_trials,
                     "draws per origin for the support check");
  verify->add_option("--json", va.json_out, "results JSON output");

  std::vector<std::string> argv_storage = {"dptext"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    AppConfig cfg = BuildConfig(o);
    if (*perturb) return CmdPerturb(cfg, o, pa, out, err);
    if (*run) return CmdRun(cfg, o, ra, out, err);
    if (*attack) return CmdAttack(cfg, o, aa, out, err);
    if (*metrics) return CmdMetrics(cfg, o, ma, out, err);
    if (*verify) return CmdVerify(cfg, o, va, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace dptext
