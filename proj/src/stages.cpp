#include "emoaug/stages.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <thread>

#include "emoaug/error.hpp"
#include "emoaug/filtering.hpp"
#include "emoaug/jsonl.hpp"
#include "emoaug/rng.hpp"

namespace emoaug::stages {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kToolVersion = "0.1.0";

json describe_input(const fs::path& path) {
  auto in = open_input(path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
  return json{{"path", path.generic_string()}, {"bytes", bytes.size()}, {"fnv1a64", hex}};
}

void write_manifest(const fs::path& output, const std::string& stage, const RunConfig& cfg, json inputs,
                    json counts, json extra = json::object()) {
  json m;
  m["stage"] = stage;
  m["tool_version"] = kToolVersion;
  m["config"] = to_json(cfg);
  m["inputs"] = std::move(inputs);
  m["output"] = output.generic_string();
  m["counts"] = std::move(counts);
  for (auto& [k, v] : extra.items()) m[k] = v;
  write_json_file(manifest_path(output), m);
}

std::vector<std::string> read_id_list(const fs::path& path) {
  auto in = open_input(path);
  std::vector<std::string> ids;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) ids.push_back(line);
  }
  return ids;
}

}  // namespace

fs::path manifest_path(const fs::path& output) {
  fs::path p = output;
  p += ".manifest.json";
  return p;
}

// ---------------------------------------------------------------------------
// ProviderSet

ProviderSet::ProviderSet(const RunConfig& cfg) : cfg_(cfg) {
  if (cfg_.use_remote()) {
    RemoteOptions opts;
    opts.base_url = cfg_.endpoint;
    opts.max_retries = cfg_.max_retries;
    opts.timeout = std::chrono::milliseconds(cfg_.timeout_ms);
    opts.backoff = std::chrono::milliseconds(cfg_.backoff_ms);
    client_ = std::make_shared<RemoteClient>(std::move(opts));
  }
}

ProviderSet::~ProviderSet() = default;

const Stopwords& ProviderSet::stopwords() {
  if (cfg_.stopwords.empty()) return Stopwords::builtin();
  if (!stopwords_) stopwords_ = Stopwords::load(cfg_.stopwords);
  return *stopwords_;
}

const EmbeddingTable& ProviderSet::embeddings() {
  if (!embeddings_) {
    if (cfg_.embeddings.empty()) throw ConfigError("no embedding file configured");
    embeddings_ = std::make_unique<EmbeddingTable>(load_embeddings(cfg_.embeddings));
  }
  return *embeddings_;
}

const SneLexicon& ProviderSet::sne() {
  if (!sne_) {
    if (cfg_.vad.empty()) throw ConfigError("no VAD lexicon configured");
    auto vad = load_vad(cfg_.vad);
    sne_ = std::make_unique<SneLexicon>(build_sne_lexicon(vad, cfg_.valence_max, cfg_.arousal_min));
  }
  return *sne_;
}

const AffinityScorer& ProviderSet::affinity() {
  if (!affinity_) affinity_ = std::make_unique<AffinityScorer>(embeddings(), sne());
  return *affinity_;
}

const FillMaskProvider& ProviderSet::filler() {
  if (!filler_) {
    if (client_) {
      filler_ = std::make_unique<RemoteFiller>(client_, cfg_.mask_token, cfg_.max_tokens);
    } else {
      filler_ = std::make_unique<NearestNeighborFiller>(embeddings(), stopwords());
    }
  }
  return *filler_;
}

const TranslationProvider& ProviderSet::forward() {
  if (!forward_) {
    if (client_) {
      forward_ = std::make_unique<RemoteTranslator>(client_, cfg_.source_lang, cfg_.pivot_lang);
    } else {
      forward_ = std::make_unique<SubstitutionTranslator>(
          SubstitutionTranslator::load(cfg_.translation_forward, cfg_.source_lang, cfg_.pivot_lang));
    }
  }
  return *forward_;
}

const TranslationProvider& ProviderSet::backward() {
  if (!backward_) {
    if (client_) {
      backward_ = std::make_unique<RemoteTranslator>(client_, cfg_.pivot_lang, cfg_.source_lang);
    } else {
      backward_ = std::make_unique<SubstitutionTranslator>(
          SubstitutionTranslator::load(cfg_.translation_backward, cfg_.pivot_lang, cfg_.source_lang));
    }
  }
  return *backward_;
}

const ClassifierProvider& ProviderSet::classifier() {
  if (!classifier_) {
    if (client_) {
      classifier_ = std::make_unique<RemoteClassifier>(client_);
    } else {
      classifier_ = std::make_unique<KeywordClassifier>(KeywordClassifier::load_keywords(cfg_.keywords),
                                                        cfg_.keyword_scoring);
    }
  }
  return *classifier_;
}

AugmentProviders ProviderSet::augment_providers(AugmentMethod method) {
  AugmentProviders p;
  p.stopwords = &stopwords();
  if (method == AugmentMethod::kBackTranslation) {
    p.forward = &forward();
    p.backward = &backward();
  } else {
    p.filler = &filler();
    p.affinity = &affinity();
  }
  return p;
}

json ProviderSet::describe() const {
  json j = json::object();
  if (filler_) j["fill_mask"] = filler_->capability().name;
  if (forward_) j["forward"] = forward_->capability().name;
  if (backward_) j["backward"] = backward_->capability().name;
  if (classifier_) j["classifier"] = classifier_->capability().name;
  if (sne_) j["sne_words"] = sne_->words().size();
  if (embeddings_) {
    j["embedding_words"] = embeddings_->size();
    j["embedding_duplicates_ignored"] = embeddings_->duplicates_ignored();
  }
  return j;
}

// ---------------------------------------------------------------------------
// Stages

IngestStats run_ingest(const RunConfig& cfg, const fs::path& in, CorpusSchema schema, const fs::path& out,
                       std::ostream& log) {
  ProviderSet providers(cfg);
  IngestOptions opts{schema, cfg.rating_threshold, cfg.max_tokens};
  auto input = open_input(in);
  IngestResult result = ingest(input, opts, EmotionMapping::ieso_to_semeval(), providers.stopwords());
  {
    auto output = open_output(out);
    for (const auto& lp : result.records) {
      write_jsonl_line(output, schema == CorpusSchema::kLabeled ? to_json(lp) : to_json(lp.post));
    }
  }
  write_manifest(out, "ingest", cfg, json{{"corpus", describe_input(in)}},
                 json{{"read", result.stats.read},
                      {"kept", result.stats.kept},
                      {"dropped_overlength", result.stats.dropped_overlength},
                      {"dropped_ids", result.stats.dropped_ids}},
                 json{{"schema", schema == CorpusSchema::kLabeled ? "labeled" : "posts"}});
  log << "kept=" << result.stats.kept << " dropped_overlength=" << result.stats.dropped_overlength << '\n';
  return result.stats;
}

std::size_t run_classify(const RunConfig& cfg, const fs::path& in, const fs::path& out, std::ostream& log) {
  ProviderSet providers(cfg);
  const auto posts = load_posts(in);
  const ClassifierProvider& clf = providers.classifier();
  std::vector<std::optional<PredictionScores>> results(posts.size());
  std::vector<std::exception_ptr> errors(posts.size());
  std::atomic<std::size_t> next{0};
  CallGate gate(clf.capability().single_flight);
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < posts.size(); i = next.fetch_add(1)) {
      try {
        results[i] = gate([&] { return classify(posts[i], clf, cfg.decision_threshold); });
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    const std::size_t n = std::clamp<std::size_t>(cfg.workers, 1, std::max<std::size_t>(posts.size(), 1));
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < n; ++w) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  {
    auto output = open_output(out);
    for (const auto& r : results) write_jsonl_line(output, to_json(*r));
  }
  write_manifest(out, "classify", cfg, json{{"corpus", describe_input(in)}}, json{{"classified", posts.size()}},
                 json{{"providers", providers.describe()}});
  log << "classified=" << posts.size() << '\n';
  return posts.size();
}

std::size_t run_filter(const RunConfig& cfg, const fs::path& predictions, const fs::path& out, std::ostream& log) {
  const FilterConfig fc = cfg.filter_config();
  const auto scored = load_predictions(predictions, fc.decision_threshold);
  const auto kept = confidence_filter(scored, fc);
  {
    auto output = open_output(out);
    for (const auto& id : kept) output << id << '\n';
  }
  write_manifest(out, "filter", cfg, json{{"predictions", describe_input(predictions)}},
                 json{{"scored", scored.size()}, {"kept", kept.size()}, {"dropped", scored.size() - kept.size()}});
  log << "kept=" << kept.size() << " dropped=" << scored.size() - kept.size() << '\n';
  return kept.size();
}

Split run_sample(const RunConfig& cfg, const fs::path& corpus, const std::optional<fs::path>& ids,
                 const std::optional<fs::path>& predictions, const fs::path& out_dir, std::ostream& log) {
  const SplitSpec spec = cfg.split_spec();
  json inputs{{"corpus", describe_input(corpus)}};

  std::unordered_map<std::string, LabeledPost> by_id;
  std::vector<std::string> order;
  if (predictions) {
    inputs["predictions"] = describe_input(*predictions);
    std::unordered_map<std::string, EmotionVector> pseudo;
    for (auto& p : load_predictions(*predictions, cfg.decision_threshold)) pseudo[p.post_id] = p.predicted;
    for (auto& post : load_posts(corpus)) {
      auto it = pseudo.find(post.id);
      if (it == pseudo.end()) continue;
      std::string id = post.id;
      order.push_back(id);
      by_id.emplace(std::move(id), LabeledPost{std::move(post), it->second});
    }
  } else {
    for (auto& lp : load_labeled_posts(corpus)) {
      std::string id = lp.post.id;
      order.push_back(id);
      by_id.emplace(std::move(id), std::move(lp));
    }
  }

  std::vector<std::string> pool;
  if (ids) {
    inputs["ids"] = describe_input(*ids);
    for (auto& id : read_id_list(*ids)) {
      if (!by_id.contains(id)) throw DataError("id \"" + id + "\" has no labeled record");
      pool.push_back(std::move(id));
    }
  } else {
    pool = order;
  }

  Split split = sample_split(pool, spec);
  auto write = [&](const std::vector<std::string>& part, const fs::path& path) {
    auto output = open_output(path);
    for (const auto& id : part) write_jsonl_line(output, to_json(by_id.at(id)));
  };
  const fs::path train_path = out_dir / "train.jsonl";
  const fs::path valid_path = out_dir / "valid.jsonl";
  write(split.train, train_path);
  write(split.valid, valid_path);
  write_manifest(out_dir / "split", "sample", cfg, inputs,
                 json{{"pool", pool.size()}, {"train", split.train.size()}, {"valid", split.valid.size()}},
                 json{{"train_ids", split.train}, {"valid_ids", split.valid}});
  log << "train=" << split.train.size() << " valid=" << split.valid.size() << '\n';
  return split;
}

AugmentResult run_augment(const RunConfig& cfg, const fs::path& train, const fs::path& out, std::ostream& log) {
  const AugmentationConfig ac = cfg.augmentation_config();
  ProviderSet providers(cfg);
  const auto sources = load_labeled_posts(train);
  AugmentResult result = augment_corpus(sources, ac, providers.augment_providers(ac.method));
  {
    auto output = open_output(out);
    write_synthetic(output, result.examples);
  }
  json shortfalls = json::array();
  for (const auto& s : result.shortfalls) {
    shortfalls.push_back(json{{"source_id", s.source_id}, {"produced", s.produced}, {"target", s.target},
                              {"reason", s.reason}});
  }
  write_manifest(out, "augment", cfg, json{{"train", describe_input(train)}},
                 json{{"sources", sources.size()},
                      {"target", result.target},
                      {"written", result.examples.size()},
                      {"degenerate", result.degenerate}},
                 json{{"seed", cfg.seed},
                      {"shortfalls", shortfalls},
                      {"aborted", result.aborted},
                      {"abort_reason", result.abort_reason},
                      {"providers", providers.describe()}});
  log << "synthetic=" << result.examples.size() << " target=" << result.target
      << " degenerate=" << result.degenerate << " shortfall_sources=" << result.shortfalls.size() << '\n';
  return result;
}

json run_evaluate(const RunConfig& cfg, const std::optional<fs::path>& synthetic, const std::optional<fs::path>& gold,
                  const std::optional<fs::path>& predictions, const fs::path& out, std::ostream& log) {
  if (!synthetic && !(gold && predictions)) {
    throw ConfigError("evaluate needs --synthetic and/or both --gold and --pred");
  }
  ProviderSet providers(cfg);
  json report = json::object();
  json inputs = json::object();
  std::vector<std::pair<std::string, MetricsReport>> rows;
  if (synthetic) {
    inputs["synthetic"] = describe_input(*synthetic);
    const auto examples = load_synthetic(*synthetic);
    MetricsReport r = evaluate_fidelity(examples, providers.classifier(), cfg.decision_threshold, cfg.ttr_orders,
                                        cfg.workers);
    report["fidelity"] = to_json(r);
    std::string name = "fidelity";
    if (!examples.empty()) name += "(" + std::string(to_string(examples.front().method)) + ")";
    rows.emplace_back(name, std::move(r));
  }
  if (gold && predictions) {
    inputs["gold"] = describe_input(*gold);
    inputs["predictions"] = describe_input(*predictions);
    MetricsReport r = evaluate_extrinsic(load_labeled_posts(*gold), load_predictions(*predictions, cfg.decision_threshold));
    report["extrinsic"] = to_json(r);
    rows.emplace_back("extrinsic", std::move(r));
  }
  write_json_file(out, report);
  const std::string table = format_table(rows);
  {
    fs::path txt = out;
    txt.replace_extension(".txt");
    auto output = open_output(txt);
    output << table;
  }
  write_manifest(out, "evaluate", cfg, inputs, json{{"rows", rows.size()}}, json{{"providers", providers.describe()}});
  log << table;
  return report;
}

}  // namespace emoaug::stages
