#include "emoaug/run_config.hpp"

#include <algorithm>

#include "emoaug/error.hpp"
#include "emoaug/jsonl.hpp"

namespace emoaug {

using nlohmann::json;

RunConfig RunConfig::with_default_paths() {
  RunConfig cfg;
  const std::string mock = std::string(EMOAUG_DATA_DIR) + "/mock/";
  cfg.embeddings = mock + "embeddings.txt";
  cfg.vad = mock + "vad.tsv";
  cfg.keywords = mock + "keywords.tsv";
  cfg.translation_forward = mock + "en_fr.tsv";
  cfg.translation_backward = mock + "fr_en.tsv";
  cfg.keyword_scoring = {0.2, 0.6, 3.0, -1.0};
  return cfg;
}

FilterConfig RunConfig::filter_config() const {
  FilterConfig f{low, high, mode, decision_threshold};
  f.validate();
  return f;
}

SplitSpec RunConfig::split_spec() const {
  SplitSpec s{split_total, split_train, split_valid, seed};
  s.validate();
  return s;
}

AugmentationConfig RunConfig::augmentation_config() const {
  AugmentationConfig a;
  a.method = method;
  a.folds = folds;
  a.mask_rate = mask_rate;
  a.span_len = span_len;
  a.epsilon = epsilon;
  a.global_seed = seed;
  a.max_regen_attempts = max_regen_attempts;
  a.drop_degenerate = drop_degenerate;
  a.workers = workers;
  a.validate();
  return a;
}

json to_json(const RunConfig& c) {
  return json{
      {"seed", c.seed},
      {"corpus", {{"rating_threshold", c.rating_threshold}, {"max_tokens", c.max_tokens}, {"stopwords", c.stopwords}}},
      {"lexicon",
       {{"embeddings", c.embeddings}, {"vad", c.vad}, {"valence_max", c.valence_max}, {"arousal_min", c.arousal_min}}},
      {"providers",
       {{"mock", c.mock},
        {"endpoint", c.endpoint},
        {"max_retries", c.max_retries},
        {"timeout_ms", c.timeout_ms},
        {"backoff_ms", c.backoff_ms},
        {"mask_token", c.mask_token},
        {"source_lang", c.source_lang},
        {"pivot_lang", c.pivot_lang},
        {"decision_threshold", c.decision_threshold},
        {"keywords", c.keywords},
        {"keyword_scoring",
         {{"hit_score", c.keyword_scoring.hit_score},
          {"hit_step", c.keyword_scoring.hit_step},
          {"hit_cap", c.keyword_scoring.hit_cap},
          {"miss_score", c.keyword_scoring.miss_score}}},
        {"translation_forward", c.translation_forward},
        {"translation_backward", c.translation_backward}}},
      {"filter", {{"low", c.low}, {"high", c.high}, {"mode", std::string(to_string(c.mode))}}},
      {"split", {{"total", c.split_total}, {"train", c.split_train}, {"valid", c.split_valid}}},
      {"augment",
       {{"method", std::string(to_string(c.method))},
        {"folds", c.folds},
        {"mask_rate", c.mask_rate},
        {"span_len", c.span_len},
        {"epsilon", c.epsilon},
        {"max_regen_attempts", c.max_regen_attempts},
        {"drop_degenerate", c.drop_degenerate}}},
      {"evaluate", {{"ttr_orders", c.ttr_orders}}},
  };
}

namespace {

class Section {
 public:
  Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) throw ConfigError("config section \"" + name_ + "\" must be an object");
  }

  template <typename T>
  Section& read(const char* key, T& target) {
    if (auto it = j_.find(key); it != j_.end()) {
      try {
        target = it->get<T>();
      } catch (const json::exception&) {
        throw ConfigError("config key \"" + name_ + "." + key + "\" has the wrong type");
      }
    }
    known_.push_back(key);
    return *this;
  }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (std::find(known_.begin(), known_.end(), k) == known_.end()) {
        throw ConfigError("unknown config key \"" + (name_.empty() ? k : name_ + "." + k) + "\"");
      }
    }
  }

 private:
  const json& j_;
  std::string name_;
  std::vector<std::string> known_;
};

}  // namespace

void merge_json(RunConfig& c, const json& j) {
  Section top(j, "");
  top.read("seed", c.seed);
  for (const char* s : {"corpus", "lexicon", "providers", "filter", "split", "augment", "evaluate"}) {
    json ignored;
    top.read(s, ignored);
  }
  top.finish();

  if (j.contains("corpus")) {
    Section(j["corpus"], "corpus")
        .read("rating_threshold", c.rating_threshold)
        .read("max_tokens", c.max_tokens)
        .read("stopwords", c.stopwords)
        .finish();
  }
  if (j.contains("lexicon")) {
    Section(j["lexicon"], "lexicon")
        .read("embeddings", c.embeddings)
        .read("vad", c.vad)
        .read("valence_max", c.valence_max)
        .read("arousal_min", c.arousal_min)
        .finish();
  }
  if (j.contains("providers")) {
    const json& p = j["providers"];
    json scoring;
    Section(p, "providers")
        .read("mock", c.mock)
        .read("endpoint", c.endpoint)
        .read("max_retries", c.max_retries)
        .read("timeout_ms", c.timeout_ms)
        .read("backoff_ms", c.backoff_ms)
        .read("mask_token", c.mask_token)
        .read("source_lang", c.source_lang)
        .read("pivot_lang", c.pivot_lang)
        .read("decision_threshold", c.decision_threshold)
        .read("keywords", c.keywords)
        .read("keyword_scoring", scoring)
        .read("translation_forward", c.translation_forward)
        .read("translation_backward", c.translation_backward)
        .finish();
    if (p.contains("keyword_scoring")) {
      Section(p["keyword_scoring"], "providers.keyword_scoring")
          .read("hit_score", c.keyword_scoring.hit_score)
          .read("hit_step", c.keyword_scoring.hit_step)
          .read("hit_cap", c.keyword_scoring.hit_cap)
          .read("miss_score", c.keyword_scoring.miss_score)
          .finish();
    }
  }
  if (j.contains("filter")) {
    std::string mode(to_string(c.mode));
    Section(j["filter"], "filter").read("low", c.low).read("high", c.high).read("mode", mode).finish();
    c.mode = parse_window_mode(mode);
  }
  if (j.contains("split")) {
    Section(j["split"], "split")
        .read("total", c.split_total)
        .read("train", c.split_train)
        .read("valid", c.split_valid)
        .finish();
  }
  if (j.contains("augment")) {
    std::string method(to_string(c.method));
    Section(j["augment"], "augment")
        .read("method", method)
        .read("folds", c.folds)
        .read("mask_rate", c.mask_rate)
        .read("span_len", c.span_len)
        .read("epsilon", c.epsilon)
        .read("max_regen_attempts", c.max_regen_attempts)
        .read("drop_degenerate", c.drop_degenerate)
        .finish();
    c.method = parse_augment_method(method);
  }
  if (j.contains("evaluate")) {
    Section(j["evaluate"], "evaluate").read("ttr_orders", c.ttr_orders).finish();
  }
}

RunConfig load_run_config(const std::filesystem::path& path) {
  RunConfig cfg = RunConfig::with_default_paths();
  json j;
  try {
    j = read_json_file(path);
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  merge_json(cfg, j);
  return cfg;
}

}  // namespace emoaug
