#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "emoaug/augment.hpp"
#include "emoaug/filtering.hpp"
#include "emoaug/lexicon.hpp"
#include "emoaug/providers.hpp"
#include "json.hpp"

namespace emoaug {

// Every knob of every stage. Serialized in full into each stage manifest,
// except the worker count, which never changes outputs.
struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t workers = 1;

  // corpus
  int rating_threshold = 4;
  std::size_t max_tokens = kDefaultMaxTokens;
  std::string stopwords;  // empty: built-in list

  // lexicon
  std::string embeddings;
  std::string vad;
  double valence_max = kDefaultValenceMax;
  double arousal_min = kDefaultArousalMin;

  // providers
  bool mock = false;
  std::string endpoint;
  int max_retries = 3;
  int timeout_ms = 10000;
  int backoff_ms = 100;
  std::string mask_token = "[MASK]";
  std::string source_lang = "en";
  std::string pivot_lang = "fr";
  double decision_threshold = kDefaultDecisionThreshold;
  std::string keywords;
  KeywordClassifier::Scoring keyword_scoring;
  std::string translation_forward;
  std::string translation_backward;

  // filter
  double low = 0.3;
  double high = 0.8;
  WindowMode mode = WindowMode::kAny;

  // split
  std::size_t split_total = 1000;
  std::size_t split_train = 700;
  std::size_t split_valid = 300;

  // augment
  AugmentMethod method = AugmentMethod::kMaskToken;
  std::size_t folds = 1;
  double mask_rate = kDefaultMaskRate;
  std::size_t span_len = kDefaultSpanLength;
  double epsilon = kAffinityEpsilon;
  std::size_t max_regen_attempts = 3;
  bool drop_degenerate = false;

  // evaluate
  std::vector<std::size_t> ttr_orders{1, 2, 3};

  // Mock resources shipped under data/mock unless overridden.
  static RunConfig with_default_paths();

  FilterConfig filter_config() const;
  SplitSpec split_spec() const;
  AugmentationConfig augmentation_config() const;
  bool use_remote() const { return !mock && !endpoint.empty(); }
};

nlohmann::json to_json(const RunConfig& cfg);
// Overlays the keys present in `j`; unknown keys raise ConfigError.
void merge_json(RunConfig& cfg, const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace emoaug
